#include "rejsamp/unate.hpp"
#include "rejsamp/rng.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rejsamp {

namespace {

std::vector<int> complement_of(int n, const std::vector<int>& S) {
    std::vector<char> in(n + 1, 0);
    for (int v : S) in[v] = 1;
    std::vector<int> out;
    for (int v = 1; v <= n; ++v)
        if (!in[v]) out.push_back(v);
    return out;
}

// Appends the next element of a term drawn without replacement from pool.
inline int draw_element(Stream& st, const std::vector<int>& pool, const int* drawn, int k) {
    for (;;) {
        int e = pool[st.below(pool.size())];
        if (std::find(drawn, drawn + k, e) == drawn + k) return e;
    }
}

} // namespace

TermSet::TermSet(std::vector<int> pool, int s, std::uint64_t count, std::uint64_t key)
    : pool_(std::move(pool)), s_(s), count_(count), key_(key) {
    std::sort(pool_.begin(), pool_.end());
    if (std::adjacent_find(pool_.begin(), pool_.end()) != pool_.end()) throw std::invalid_argument("duplicate pool element");
    if (s < 0 || s > static_cast<int>(pool_.size())) throw std::invalid_argument("term size exceeds the pool");
    if (count == 0) throw std::invalid_argument("need at least one term");
    if (count <= kMaterializeCap && s > 0) {
        flat_.resize(count * s);
        for (std::uint64_t i = 1; i <= count; ++i) {
            Stream st(derive_seed(key_, i));
            int* out = flat_.data() + (i - 1) * s;
            for (int t = 0; t < s; ++t) out[t] = draw_element(st, pool_, out, t);
        }
    }
}

TermSet TermSet::from_list(std::vector<int> pool, std::vector<std::vector<int>> terms) {
    TermSet ts;
    ts.pool_ = std::move(pool);
    std::sort(ts.pool_.begin(), ts.pool_.end());
    if (terms.empty()) throw std::invalid_argument("need at least one term");
    ts.s_ = static_cast<int>(terms[0].size());
    ts.count_ = terms.size();
    for (auto& t : terms) {
        if (static_cast<int>(t.size()) != ts.s_) throw std::invalid_argument("terms must share one size");
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw std::invalid_argument("term repeats a variable");
        for (int v : t) {
            if (!std::binary_search(ts.pool_.begin(), ts.pool_.end(), v))
                throw std::invalid_argument("term variable outside the pool");
            ts.flat_.push_back(v);
        }
    }
    return ts;
}

std::vector<int> TermSet::term(std::uint64_t i) const {
    if (i < 1 || i > count_) throw std::out_of_range("term index outside [1..N]");
    std::vector<int> t(s_);
    if (materialized()) {
        std::copy_n(flat_.begin() + static_cast<std::ptrdiff_t>((i - 1) * s_), s_, t.begin());
    } else {
        Stream st(derive_seed(key_, i));
        for (int k = 0; k < s_; ++k) t[k] = draw_element(st, pool_, t.data(), k);
    }
    std::sort(t.begin(), t.end());
    return t;
}

template <class Visit>
void TermSet::scan(std::uint64_t chunk_all, const std::vector<std::uint64_t>& ones, Visit&& visit) const {
    std::vector<int> drawn(s_);
    for (std::uint64_t i = 1; i <= count_; ++i) {
        std::uint64_t alive = chunk_all;
        if (materialized()) {
            const int* t = flat_.data() + (i - 1) * s_;
            for (int k = 0; k < s_ && alive; ++k) alive &= ones[t[k]];
        } else {
            // draw only as many elements as needed to rule the term out
            Stream st(derive_seed(key_, i));
            for (int k = 0; k < s_ && alive; ++k) {
                drawn[k] = draw_element(st, pool_, drawn.data(), k);
                alive &= ones[drawn[k]];
            }
        }
        if (alive) visit(i, alive);
    }
}

std::vector<TermHit> TermSet::classify(const std::vector<BitVec>& xs) const {
    std::vector<TermHit> out(xs.size());
    if (xs.empty()) return out;
    const int top = pool_.empty() ? 0 : pool_.back();
    std::vector<std::uint64_t> ones(top + 1);
    std::vector<std::uint8_t> hits(64);
    std::vector<std::uint64_t> first(64);
    for (std::size_t base = 0; base < xs.size(); base += 64) {
        const std::size_t len = std::min<std::size_t>(64, xs.size() - base);
        std::fill(ones.begin(), ones.end(), 0);
        for (std::size_t q = 0; q < len; ++q) {
            const BitVec& x = xs[base + q];
            if (static_cast<int>(x.size()) < top) throw std::invalid_argument("input shorter than the term variables");
            for (int v : pool_)
                if (x[v - 1]) ones[v] |= std::uint64_t{1} << q;
        }
        std::fill(hits.begin(), hits.end(), 0);
        const std::uint64_t all = len == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
        scan(all, ones, [&](std::uint64_t i, std::uint64_t alive) {
            for (; alive; alive &= alive - 1) {
                int q = std::countr_zero(alive);
                if (hits[q] < 2) ++hits[q];
                if (hits[q] == 1) first[q] = i;
            }
        });
        for (std::size_t q = 0; q < len; ++q) {
            if (hits[q] == 0)
                out[base + q] = {TermHit::Kind::ZeroStar, 0};
            else if (hits[q] == 1)
                out[base + q] = {TermHit::Kind::Unique, first[q]};
            else
                out[base + q] = {TermHit::Kind::OneStar, 0};
        }
    }
    return out;
}

TermHit TermSet::classify(const BitVec& x) const { return classify(std::vector<BitVec>{x})[0]; }

TermSet sample_terms(const std::vector<int>& core, std::uint64_t count, int s, std::uint64_t seed) {
    return TermSet(core, s, count, seed);
}

UnateBand unate_band(int n) {
    const int r = isqrt_floor(static_cast<std::uint64_t>(n));
    // n/4 may be fractional; round the band inward
    const int lo = (n + 3) / 4 - r;
    const int hi = n / 4 + r;
    return {lo, hi};
}

UnateSkeleton sample_unate_skeleton(int n, Stream& rng) {
    UnateSkeleton sk;
    sk.M = sample_subset(rng, n, n / 2);
    const auto h = static_cast<std::uint64_t>(sk.M.size());
    std::uint64_t a = rng.below(h), b = rng.below(h - 1);
    if (b >= a) ++b;
    sk.m1 = sk.M[a];
    sk.m2 = sk.M[b];
    return sk;
}

UnateInstance::UnateInstance(int n, std::vector<int> M, int m1, int m2, std::vector<int> A, GraphFamily family,
                             std::uint64_t seed, std::shared_ptr<const TermSet> terms)
    : n_(n), M_(std::move(M)), m1_(m1), m2_(m2), A_(std::move(A)), family_(family), seed_(seed),
      terms_(std::move(terms)) {
    if (n <= 0 || n % 4 != 0) throw std::invalid_argument("unate instances need n divisible by 4");
    std::sort(M_.begin(), M_.end());
    std::sort(A_.begin(), A_.end());
    if (static_cast<int>(M_.size()) != n / 2 || M_.front() < 1 || M_.back() > n ||
        std::adjacent_find(M_.begin(), M_.end()) != M_.end())
        throw std::invalid_argument("M must be n/2 distinct variables");
    if (m1 == m2 || !std::binary_search(M_.begin(), M_.end(), m1) || !std::binary_search(M_.begin(), M_.end(), m2))
        throw std::invalid_argument("m1, m2 must be distinct elements of M");
    Mbar_ = complement_of(n, M_);
    if (static_cast<int>(A_.size()) != static_cast<int>(Mbar_.size()) / 2)
        throw std::invalid_argument("|A| must be half of the complement of M");
    std::vector<int> local_a;
    for (int a : A_) {
        auto it = std::lower_bound(Mbar_.begin(), Mbar_.end(), a);
        if (it == Mbar_.end() || *it != a) throw std::invalid_argument("A must lie inside the complement of M");
        local_a.push_back(static_cast<int>(it - Mbar_.begin()) + 1);
    }
    local_ = build_graph(Partition(static_cast<int>(Mbar_.size()), local_a), family);
    if (!terms_) {
        std::vector<int> core;
        for (int v : M_)
            if (v != m1 && v != m2) core.push_back(v);
        const int s = isqrt_ceil(static_cast<std::uint64_t>(n));
        if (s > 62) throw CapacityError("2^ceil(sqrt n) terms do not fit 64-bit indices");
        terms_ = std::make_shared<TermSet>(std::move(core), s, std::uint64_t{1} << s, derive_seed(seed, 2));
    } else {
        for (int v : terms_->pool())
            if (v == m1 || v == m2 || !std::binary_search(M_.begin(), M_.end(), v))
                throw std::invalid_argument("terms must avoid m1, m2 and stay inside M");
    }
    sub_key_ = derive_seed(seed, 1);
}

UnateInstance::UnateInstance(const UnateInstance& o)
    : n_(o.n_), M_(o.M_), Mbar_(o.Mbar_), m1_(o.m1_), m2_(o.m2_), A_(o.A_), family_(o.family_), seed_(o.seed_),
      terms_(o.terms_), local_(o.local_), sub_key_(o.sub_key_) {
    std::lock_guard lock(o.mu_);
    memo_ = o.memo_;
}

UnateInstance UnateInstance::sample(int n, GraphFamily family, std::uint64_t seed) {
    if (n <= 0 || n % 4 != 0) throw std::invalid_argument("unate instances need n divisible by 4");
    Stream rng(derive_seed(seed, 0));
    auto sk = sample_unate_skeleton(n, rng);
    auto A = sample_subset_of(rng, complement_of(n, sk.M), n / 4);
    return UnateInstance(n, std::move(sk.M), sk.m1, sk.m2, std::move(A), family, seed);
}

UnateSpec UnateInstance::subfunction(std::uint64_t i) const {
    const std::uint64_t N = this->N();
    if (i < 1 || i > N) throw std::out_of_range("subfunction index outside [1..N]");
    {
        std::lock_guard lock(mu_);
        auto it = memo_.find(i);
        if (it != memo_.end()) return it->second;
    }
    Stream st(derive_seed(sub_key_, i));
    UnateSpec spec;
    // i <= floor(3N/4), written without overflow
    if (i <= N - (N + 3) / 4) {
        spec.kind = st.bit() ? UnateSpec::Kind::AntiDictator : UnateSpec::Kind::Dictator;
        spec.j1 = spec.kind == UnateSpec::Kind::Dictator ? m1_ : m2_;
    } else {
        const Edge& e = local_.edges()[st.below(local_.n_edges())];
        spec.kind = UnateSpec::Kind::TriParity;
        spec.j1 = global_vertex(e.u);
        spec.j2 = global_vertex(e.v);
        const bool to_m2 = st.bit();
        spec.j3 = to_m2 ? m2_ : m1_;
        spec.negate = to_m2;
    }
    std::lock_guard lock(mu_);
    return memo_.emplace(i, spec).first->second;
}

std::size_t UnateInstance::memo_size() const {
    std::lock_guard lock(mu_);
    return memo_.size();
}

namespace {

std::uint8_t apply_spec(const UnateSpec& s, const BitVec& x) {
    switch (s.kind) {
    case UnateSpec::Kind::Dictator: return x[s.j1 - 1];
    case UnateSpec::Kind::AntiDictator: return x[s.j1 - 1] ^ 1;
    case UnateSpec::Kind::TriParity: return x[s.j1 - 1] ^ x[s.j2 - 1] ^ x[s.j3 - 1] ^ s.negate;
    }
    return 0;
}

} // namespace

std::uint8_t UnateInstance::eval(const BitVec& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("input length does not match n");
    int w = 0;
    for (int j : M_) w += x[j - 1];
    const UnateBand b = band();
    if (w > b.hi) return 1;
    if (w < b.lo) return 0;
    const TermHit h = gamma_T(x);
    if (h.kind == TermHit::Kind::OneStar) return 1;
    if (h.kind == TermHit::Kind::ZeroStar) return 0;
    return apply_spec(subfunction(h.index), x);
}

BoolFn UnateInstance::as_function() const {
    return {n_, [this](const BitVec& x) { return eval(x); }};
}

namespace {

// Applies fn(x, value) over the whole cube in chunks, classifying band inputs in batches.
template <class OnPoint>
void sweep_cube(const UnateInstance& f, OnPoint&& on_point) {
    const int n = f.n();
    if (n > kTableVarCap) throw CapacityError("cube sweep needs n <= 24");
    std::uint64_t mmask = 0;
    for (int j : f.M()) mmask |= std::uint64_t{1} << (j - 1);
    const UnateBand b = f.band();
    const std::uint64_t total = std::uint64_t{1} << n;
    constexpr std::uint64_t kChunk = 4096;
    std::vector<BitVec> xs;
    std::vector<std::uint64_t> idx;
    for (std::uint64_t base = 0; base < total; base += kChunk) {
        xs.clear();
        idx.clear();
        for (std::uint64_t x = base; x < std::min(total, base + kChunk); ++x) {
            int w = std::popcount(x & mmask);
            if (w > b.hi)
                on_point(x, std::optional<TermHit>{}, std::uint8_t{1});
            else if (w < b.lo)
                on_point(x, std::optional<TermHit>{}, std::uint8_t{0});
            else {
                xs.push_back(index_to_bits(x, n));
                idx.push_back(x);
            }
        }
        auto hits = f.terms().classify(xs);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            std::uint8_t v;
            if (hits[k].kind == TermHit::Kind::Unique)
                v = apply_spec(f.subfunction(hits[k].index), xs[k]);
            else
                v = hits[k].kind == TermHit::Kind::OneStar;
            on_point(idx[k], std::optional<TermHit>{hits[k]}, v);
        }
    }
}

} // namespace

TruthTable UnateInstance::table() const {
    TruthTable t(n_);
    sweep_cube(*this, [&](std::uint64_t x, const std::optional<TermHit>&, std::uint8_t v) {
        if (v) t.set(x, true);
    });
    return t;
}

GammaEstimate estimate_gamma(const UnateInstance& f, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1000) throw std::invalid_argument("gamma estimation needs at least 10^3 samples");
    Stream rng(seed);
    const UnateBand b = f.band();
    std::vector<BitVec> xs;
    for (std::uint64_t s = 0; s < samples; ++s) {
        BitVec x(f.n());
        for (auto& bit : x) bit = rng.bit();
        int w = 0;
        for (int j : f.M()) w += x[j - 1];
        if (w >= b.lo && w <= b.hi) xs.push_back(std::move(x));
    }
    std::uint64_t hits = 0;
    for (const auto& h : f.terms().classify(xs)) hits += h.kind == TermHit::Kind::Unique;
    GammaEstimate g;
    g.samples = samples;
    g.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    auto ci = wilson_interval(hits, samples);
    g.ci_lo = ci.lo;
    g.ci_hi = ci.hi;
    return g;
}

Fraction exact_gamma(const UnateInstance& f) {
    std::uint64_t hits = 0;
    sweep_cube(f, [&](std::uint64_t, const std::optional<TermHit>& h, std::uint8_t) {
        if (h && h->kind == TermHit::Kind::Unique) ++hits;
    });
    return Fraction(hits, std::uint64_t{1} << f.n());
}

std::uint8_t repaired_gadget(bool j1_in_S, bool j2_in_S, bool j3_is_m2) {
    // orientation: bit set = the variable must be decreasing
    const int r = (j1_in_S ? 0 : 1) | (j2_in_S ? 0 : 2) | (j3_is_m2 ? 4 : 0);
    std::uint8_t gadget = 0;
    for (int p = 0; p < 8; ++p)
        if ((std::popcount(static_cast<unsigned>(p)) & 1) ^ j3_is_m2) gadget |= 1 << p;
    int best = -1, best_d = 9;
    for (int h = 0; h < 256; ++h) {
        bool ok = true;
        for (int p = 0; p < 8 && ok; ++p)
            for (int j = 0; j < 3 && ok; ++j)
                if (!(p & (1 << j))) {
                    // g(y) = h(y xor r) must be increasing along y -> y + e_j
                    int lo = p ^ r, hi = (p | (1 << j)) ^ r;
                    if (((h >> lo) & 1) > ((h >> hi) & 1)) ok = false;
                }
        if (!ok) continue;
        int d = std::popcount(static_cast<unsigned>(h ^ gadget));
        if (d < best_d) {
            best_d = d;
            best = h;
        }
    }
    return static_cast<std::uint8_t>(best);
}

namespace {

std::vector<char> unate_witness_mask(const UnateInstance& f, const std::vector<int>& S) {
    std::vector<char> in(f.n() + 1, 0);
    for (int v : S) {
        if (!std::binary_search(f.Mbar().begin(), f.Mbar().end(), v))
            throw std::invalid_argument("witness set must lie inside the complement of M");
        in[v] = 1;
    }
    return in;
}

std::uint8_t repaired_value(const UnateInstance& f, const std::vector<char>& in, const UnateSpec& s,
                            std::uint8_t a, std::uint8_t b, std::uint8_t c) {
    std::uint8_t table = repaired_gadget(in[s.j1], in[s.j2], s.j3 == f.m2());
    return (table >> (a | (b << 1) | (c << 2))) & 1;
}

} // namespace

BoolFn witness_unate(const UnateInstance& f, const std::vector<int>& S) {
    auto in = unate_witness_mask(f, S);
    return {f.n(), [&f, in](const BitVec& x) -> std::uint8_t {
                int w = 0;
                for (int j : f.M()) w += x[j - 1];
                const UnateBand b = f.band();
                if (w >= b.lo && w <= b.hi) {
                    TermHit h = f.gamma_T(x);
                    if (h.kind == TermHit::Kind::Unique) {
                        UnateSpec s = f.subfunction(h.index);
                        if (s.kind == UnateSpec::Kind::TriParity)
                            return repaired_value(f, in, s, x[s.j1 - 1], x[s.j2 - 1], x[s.j3 - 1]);
                    }
                }
                return f.eval(x);
            }};
}

TruthTable witness_unate_table(const UnateInstance& f, const std::vector<int>& S) {
    auto in = unate_witness_mask(f, S);
    TruthTable t(f.n());
    sweep_cube(f, [&](std::uint64_t x, const std::optional<TermHit>& h, std::uint8_t v) {
        if (h && h->kind == TermHit::Kind::Unique) {
            UnateSpec s = f.subfunction(h->index);
            if (s.kind == UnateSpec::Kind::TriParity)
                v = repaired_value(f, in, s, (x >> (s.j1 - 1)) & 1, (x >> (s.j2 - 1)) & 1, (x >> (s.j3 - 1)) & 1);
        }
        if (v) t.set(x, true);
    });
    return t;
}

void write_unate_descriptor(std::ostream& os, const UnateInstance& f) {
    if (f.N() > TermSet::kMaterializeCap) throw CapacityError("term list too long to write");
    os << "unate\nn " << f.n() << "\nM";
    for (int v : f.M()) os << ' ' << v;
    os << "\nm1 " << f.m1() << "\nm2 " << f.m2() << "\nA";
    for (int v : f.A()) os << ' ' << v;
    os << "\nfamily " << family_name(f.family()) << "\nseed " << f.seed() << "\nterms " << f.N() << '\n';
    for (std::uint64_t i = 1; i <= f.N(); ++i) {
        auto t = f.terms().term(i);
        for (std::size_t k = 0; k < t.size(); ++k) os << (k ? " " : "") << t[k];
        os << '\n';
    }
}

std::unique_ptr<UnateInstance> read_unate_descriptor(std::istream& is) {
    std::string line, tag;
    int n = -1, m1 = 0, m2 = 0;
    std::vector<int> M, A;
    std::string fam;
    std::uint64_t seed = 0, n_terms = 0;
    bool header = false, have_seed = false;
    std::vector<std::vector<int>> terms;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (n_terms > terms.size()) {
            std::vector<int> t;
            for (int v; ls >> v;) t.push_back(v);
            terms.push_back(std::move(t));
            continue;
        }
        ls >> tag;
        if (!header) {
            if (tag != "unate") throw std::runtime_error("not a unate descriptor");
            header = true;
        } else if (tag == "n")
            ls >> n;
        else if (tag == "M" || tag == "A") {
            auto& dst = tag == "M" ? M : A;
            for (int v; ls >> v;) dst.push_back(v);
        } else if (tag == "m1")
            ls >> m1;
        else if (tag == "m2")
            ls >> m2;
        else if (tag == "family")
            ls >> fam;
        else if (tag == "seed") {
            ls >> seed;
            have_seed = true;
        } else if (tag == "terms")
            ls >> n_terms;
        else
            throw std::runtime_error("unknown descriptor field '" + tag + "'");
    }
    if (n < 0 || fam.empty() || !have_seed || n_terms == 0 || terms.size() != n_terms)
        throw std::runtime_error("incomplete unate descriptor");
    std::vector<int> core;
    for (int v : M)
        if (v != m1 && v != m2) core.push_back(v);
    auto ts = std::make_shared<TermSet>(TermSet::from_list(std::move(core), std::move(terms)));
    return std::make_unique<UnateInstance>(n, std::move(M), m1, m2, std::move(A), parse_family(fam), seed, ts);
}

} // namespace rejsamp
