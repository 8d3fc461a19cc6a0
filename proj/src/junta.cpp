#include "rejsamp/junta.hpp"
#include "rejsamp/rng.hpp"

#include <algorithm>
#include <bit>
#include <istream>
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

void check_subset(const std::vector<int>& S, int n, const char* what) {
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (S[i] < 1 || S[i] > n) throw std::invalid_argument(std::string(what) + " has an element outside [1..n]");
        if (i > 0 && S[i] <= S[i - 1]) throw std::invalid_argument(std::string(what) + " must be sorted and distinct");
    }
}

} // namespace

std::uint64_t gamma_M(const BitVec& x, const std::vector<int>& M) {
    if (M.size() > 63) throw CapacityError("Gamma_M index does not fit 64 bits");
    if (2 * M.size() != x.size()) throw std::invalid_argument("|M| must be n/2");
    std::uint64_t v = 0;
    for (int j : M) v = (v << 1) | x.at(j - 1);
    return v + 1;
}

JuntaInstance::JuntaInstance(int n, std::vector<int> M, std::vector<int> A, GraphFamily family, std::uint64_t seed)
    : n_(n), M_(std::move(M)), A_(std::move(A)), family_(family), seed_(seed) {
    if (n <= 0 || n % 4 != 0) throw std::invalid_argument("junta instances need n divisible by 4");
    std::sort(M_.begin(), M_.end());
    std::sort(A_.begin(), A_.end());
    check_subset(M_, n, "M");
    check_subset(A_, n, "A");
    if (static_cast<int>(M_.size()) != n / 2) throw std::invalid_argument("|M| must be n/2");
    if (static_cast<int>(A_.size()) != n / 4) throw std::invalid_argument("|A| must be n/4");
    Mbar_ = complement_of(n, M_);
    std::vector<int> local_a;
    for (int a : A_) {
        auto it = std::lower_bound(Mbar_.begin(), Mbar_.end(), a);
        if (it == Mbar_.end() || *it != a) throw std::invalid_argument("A must lie inside the complement of M");
        local_a.push_back(static_cast<int>(it - Mbar_.begin()) + 1);
    }
    local_ = build_graph(Partition(static_cast<int>(Mbar_.size()), local_a), family);
    sub_key_ = derive_seed(seed, 1);
}

JuntaInstance::JuntaInstance(const JuntaInstance& o)
    : n_(o.n_), M_(o.M_), Mbar_(o.Mbar_), A_(o.A_), family_(o.family_), seed_(o.seed_), local_(o.local_),
      sub_key_(o.sub_key_) {
    std::lock_guard lock(o.mu_);
    memo_ = o.memo_;
}

JuntaInstance JuntaInstance::sample(int n, GraphFamily family, std::uint64_t seed) {
    if (n <= 0 || n % 4 != 0) throw std::invalid_argument("junta instances need n divisible by 4");
    Stream rng(derive_seed(seed, 0));
    auto M = sample_subset(rng, n, n / 2);
    auto A = sample_subset_of(rng, complement_of(n, M), n / 4);
    return JuntaInstance(n, std::move(M), std::move(A), family, seed);
}

ProjectionKey JuntaInstance::key_of(const BitVec& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("input length does not match n");
    const int m = this->m();
    ProjectionKey key((m + 63) / 64, 0);
    for (int t = 0; t < m; ++t)
        if (x[M_[t] - 1]) {
            int b = m - 1 - t;
            key[b / 64] |= std::uint64_t{1} << (b % 64);
        }
    return key;
}

ProjectionKey JuntaInstance::key_of_index(std::uint64_t x) const {
    if (n_ > 64) throw CapacityError("input index needs n <= 64");
    const int m = this->m();
    ProjectionKey key((m + 63) / 64, 0);
    for (int t = 0; t < m; ++t)
        if ((x >> (M_[t] - 1)) & 1) {
            int b = m - 1 - t;
            key[b / 64] |= std::uint64_t{1} << (b % 64);
        }
    return key;
}

bool JuntaInstance::first_half(const ProjectionKey& key, int m) {
    int b = m - 1;
    return ((key[b / 64] >> (b % 64)) & 1) == 0;
}

JuntaSpec JuntaInstance::subfunction(const ProjectionKey& key) const {
    if (first_half(key, m())) return {};
    {
        std::lock_guard lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    // index i = value + 1; the stream key folds in further words when m > 64
    std::uint64_t k = derive_seed(sub_key_, key[0] + 1);
    for (std::size_t w = 1; w < key.size(); ++w) k = derive_seed(k, key[w]);
    Stream s(k);
    const Edge& e = local_.edges()[s.below(local_.n_edges())];
    JuntaSpec spec{JuntaSpec::Kind::EdgeParity, global_vertex(e.u), global_vertex(e.v), s.bit()};
    std::lock_guard lock(mu_);
    return memo_.emplace(key, spec).first->second;
}

JuntaSpec JuntaInstance::subfunction(std::uint64_t i) const {
    if (m() > 63) throw CapacityError("integer subfunction index needs m <= 63");
    const std::uint64_t N = std::uint64_t{1} << m();
    if (i < 1 || i > N) throw std::out_of_range("subfunction index outside [1..N]");
    return subfunction(ProjectionKey{i - 1});
}

std::size_t JuntaInstance::memo_size() const {
    std::lock_guard lock(mu_);
    return memo_.size();
}

std::uint8_t JuntaInstance::apply(const JuntaSpec& s, const BitVec& x) const {
    if (s.kind == JuntaSpec::Kind::EdgeParity) return x[s.j1 - 1] ^ x[s.j2 - 1] ^ s.r;
    std::uint8_t p = 0;
    for (int j : M_) p ^= x[j - 1];
    return p;
}

std::uint8_t JuntaInstance::eval(const BitVec& x) const { return apply(subfunction(key_of(x)), x); }

std::uint8_t JuntaInstance::eval_index(std::uint64_t x) const {
    const JuntaSpec s = subfunction(key_of_index(x));
    if (s.kind == JuntaSpec::Kind::EdgeParity)
        return static_cast<std::uint8_t>(((x >> (s.j1 - 1)) ^ (x >> (s.j2 - 1)) ^ s.r) & 1);
    std::uint8_t p = 0;
    for (int j : M_) p ^= (x >> (j - 1)) & 1;
    return p;
}

BoolFn JuntaInstance::as_function() const {
    return {n_, [this](const BitVec& x) { return eval(x); }};
}

TruthTable JuntaInstance::table() const {
    return TruthTable::from_index(n_, [this](std::uint64_t x) { return eval_index(x); });
}

namespace {

std::vector<char> witness_mask(const JuntaInstance& f, const std::vector<int>& S) {
    std::vector<char> in(f.n() + 1, 0);
    for (int v : S) {
        if (!std::binary_search(f.Mbar().begin(), f.Mbar().end(), v))
            throw std::invalid_argument("witness set must lie inside the complement of M");
        in[v] = 1;
    }
    if (static_cast<int>(S.size()) < f.n() / 4) throw std::invalid_argument("witness set smaller than n/4");
    return in;
}

} // namespace

BoolFn witness_junta(const JuntaInstance& f, const std::vector<int>& S) {
    auto in = witness_mask(f, S);
    return {f.n(), [&f, in](const BitVec& x) -> std::uint8_t {
                JuntaSpec s = f.subfunction(f.key_of(x));
                if (s.kind == JuntaSpec::Kind::EdgeParity && (in[s.j1] || in[s.j2])) return 0;
                return f.eval(x);
            }};
}

TruthTable witness_junta_table(const JuntaInstance& f, const std::vector<int>& S) {
    auto in = witness_mask(f, S);
    return TruthTable::from_index(f.n(), [&](std::uint64_t x) -> bool {
        JuntaSpec s = f.subfunction(f.key_of_index(x));
        if (s.kind == JuntaSpec::Kind::EdgeParity && (in[s.j1] || in[s.j2])) return false;
        return f.eval_index(x);
    });
}

std::uint64_t witness_hits(const JuntaInstance& f, const std::vector<int>& S) {
    if (f.m() > 24) throw CapacityError("witness_hits enumerates 2^m indices, m <= 24");
    auto in = witness_mask(f, S);
    const std::uint64_t N = std::uint64_t{1} << f.m();
    std::uint64_t hits = 0;
    for (std::uint64_t i = N / 2 + 1; i <= N; ++i) {
        JuntaSpec s = f.subfunction(i);
        if (in[s.j1] || in[s.j2]) ++hits;
    }
    return hits;
}

namespace {

void check_extra(int extra) {
    if (extra < 0) throw std::invalid_argument("extra must be nonnegative");
}

} // namespace

BoolFn pad_parity(const BoolFn& f, int extra) {
    check_extra(extra);
    return {f.n + extra, [f](const BitVec& xy) {
                BitVec x(xy.begin(), xy.begin() + f.n);
                std::uint8_t v = f(x);
                for (std::size_t j = f.n; j < xy.size(); ++j) v ^= xy[j];
                return v;
            }};
}

TruthTable pad_parity(const TruthTable& f, int extra) {
    check_extra(extra);
    const int n = f.n_vars();
    return TruthTable::from_index(n + extra, [&](std::uint64_t x) {
        return f.get(x & (f.size() - 1)) ^ (std::popcount(x >> n) & 1);
    });
}

BoolFn pad_dummy(const BoolFn& f, int extra) {
    check_extra(extra);
    return {f.n + extra, [f](const BitVec& xy) { return f(BitVec(xy.begin(), xy.begin() + f.n)); }};
}

TruthTable pad_dummy(const TruthTable& f, int extra) {
    check_extra(extra);
    return TruthTable::from_index(f.n_vars() + extra, [&](std::uint64_t x) { return f.get(x & (f.size() - 1)); });
}

void write_junta_descriptor(std::ostream& os, const JuntaInstance& f) {
    os << "junta\nn " << f.n() << "\nM";
    for (int v : f.M()) os << ' ' << v;
    os << "\nA";
    for (int v : f.A()) os << ' ' << v;
    os << "\nfamily " << family_name(f.family()) << "\nseed " << f.seed() << '\n';
}

std::unique_ptr<JuntaInstance> read_junta_descriptor(std::istream& is) {
    std::string line, tag;
    int n = -1;
    std::vector<int> M, A;
    std::string fam;
    std::uint64_t seed = 0;
    bool have_seed = false, header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ls >> tag;
        if (!header) {
            if (tag != "junta") throw std::runtime_error("not a junta descriptor");
            header = true;
            continue;
        }
        if (tag == "n")
            ls >> n;
        else if (tag == "M" || tag == "A") {
            auto& dst = tag == "M" ? M : A;
            for (int v; ls >> v;) dst.push_back(v);
        } else if (tag == "family")
            ls >> fam;
        else if (tag == "seed") {
            ls >> seed;
            have_seed = true;
        } else
            throw std::runtime_error("unknown descriptor field '" + tag + "'");
        if (ls.fail() && !ls.eof()) throw std::runtime_error("malformed descriptor line: " + line);
    }
    if (n < 0 || fam.empty() || !have_seed) throw std::runtime_error("incomplete junta descriptor");
    return std::make_unique<JuntaInstance>(n, std::move(M), std::move(A), parse_family(fam), seed);
}

} // namespace rejsamp
