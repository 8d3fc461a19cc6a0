#include "rejsamp/distance.hpp"
#include "rejsamp/rng.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rejsamp {

namespace {

void require_vars(const TruthTable& f, int cap, const char* what) {
    if (f.n_vars() > cap)
        throw CapacityError(std::string(what) + " supports at most " + std::to_string(cap) + " variables, got " +
                            std::to_string(f.n_vars()));
}

std::vector<std::uint8_t> to_values(const TruthTable& f) {
    std::vector<std::uint8_t> v(f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) v[x] = f.get(x);
    return v;
}

// Variables (0-based bit positions) on which the value array depends.
std::vector<int> relevant_vars(const std::vector<std::uint8_t>& v, int n) {
    std::vector<int> rel;
    for (int j = 0; j < n; ++j) {
        const std::uint64_t b = std::uint64_t{1} << j;
        for (std::uint64_t x = 0; x < v.size(); ++x)
            if (!(x & b) && v[x] != v[x | b]) {
                rel.push_back(j);
                break;
            }
    }
    return rel;
}

std::vector<std::uint8_t> project(const std::vector<std::uint8_t>& v, const std::vector<int>& vars) {
    const int k = static_cast<int>(vars.size());
    std::vector<std::uint8_t> out(std::size_t{1} << k);
    for (std::uint64_t y = 0; y < out.size(); ++y) {
        std::uint64_t x = 0;
        for (int i = 0; i < k; ++i)
            if ((y >> i) & 1) x |= std::uint64_t{1} << vars[i];
        out[y] = v[x];
    }
    return out;
}

bool has_violation(const std::vector<std::uint8_t>& v, int n) {
    for (int j = 0; j < n; ++j) {
        const std::uint64_t b = std::uint64_t{1} << j;
        for (std::uint64_t x = 0; x < v.size(); ++x)
            if (!(x & b) && v[x] && !v[x | b]) return true;
    }
    return false;
}

// Dinic max-flow over an explicit arc list; capacities fit in int.
class MaxFlow {
public:
    explicit MaxFlow(int n_nodes) : head_(n_nodes, -1), level_(n_nodes), it_(n_nodes) {}

    void add_arc(int u, int v, int cap) {
        to_.push_back(v);
        cap_.push_back(cap);
        next_.push_back(head_[u]);
        head_[u] = static_cast<int>(to_.size()) - 1;
        to_.push_back(u);
        cap_.push_back(0);
        next_.push_back(head_[v]);
        head_[v] = static_cast<int>(to_.size()) - 1;
    }

    std::uint64_t run(int s, int t) {
        std::uint64_t flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) flow += static_cast<std::uint64_t>(pushed);
        }
        return flow;
    }

private:
    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<int> queue;
        queue.reserve(head_.size());
        queue.push_back(s);
        level_[s] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            for (int a = head_[u]; a != -1; a = next_[a])
                if (cap_[a] > 0 && level_[to_[a]] < 0) {
                    level_[to_[a]] = level_[u] + 1;
                    queue.push_back(to_[a]);
                }
        }
        return level_[t] >= 0;
    }

    int dfs(int u, int t, int limit) {
        if (u == t) return limit;
        for (int& a = it_[u]; a != -1; a = next_[a]) {
            int v = to_[a];
            if (cap_[a] <= 0 || level_[v] != level_[u] + 1) continue;
            int got = dfs(v, t, std::min(limit, cap_[a]));
            if (got > 0) {
                cap_[a] -= got;
                cap_[a ^ 1] += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<int> head_, level_, it_;
    std::vector<int> to_, cap_, next_;
};

std::uint64_t pow2(int k) { return std::uint64_t{1} << k; }

} // namespace

std::uint64_t monotone_repair_count(const std::vector<std::uint8_t>& values, int n) {
    if (values.size() != pow2(n)) throw std::invalid_argument("value array size is not 2^n");
    if (!has_violation(values, n)) return 0;
    const int N = static_cast<int>(values.size());
    const int S = N, T = N + 1;
    const int inf = 1 << 30;
    MaxFlow mf(N + 2);
    // S -> x for 1-points, x -> T for 0-points; the source side of the cut is the up-set.
    for (int x = 0; x < N; ++x) {
        if (values[x])
            mf.add_arc(S, x, 1);
        else
            mf.add_arc(x, T, 1);
        for (int j = 0; j < n; ++j)
            if (!(x & (1 << j))) mf.add_arc(x, x | (1 << j), inf);
    }
    return mf.run(S, T);
}

Fraction dist_between(const TruthTable& f, const TruthTable& g) {
    if (f.n_vars() != g.n_vars()) throw std::invalid_argument("functions have different arity");
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < f.words().size(); ++i) diff += std::popcount(f.words()[i] ^ g.words()[i]);
    return Fraction(diff, f.size());
}

Fraction dist_between(const BoolFn& f, const BoolFn& g) {
    if (f.n != g.n) throw std::invalid_argument("functions have different arity");
    return dist_between(TruthTable::of(f), TruthTable::of(g));
}

Fraction dist_to_kjunta_exact(const TruthTable& f, int k) {
    require_vars(f, kJuntaDistanceCap, "junta distance");
    const int n = f.n_vars();
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    if (k >= n) return Fraction(0, 1);
    const auto v = to_values(f);
    const std::uint64_t coset = pow2(n - k);
    std::vector<std::uint32_t> ones(v.size(), 0);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    // iterate k-subsets J as bitmasks in increasing order
    std::uint64_t J = pow2(k) - 1;
    const std::uint64_t limit = pow2(n);
    while (J < limit) {
        for (std::uint64_t x = 0; x < v.size(); ++x) ones[x & J] += v[x];
        std::uint64_t cost = 0;
        for (std::uint64_t s = J;; s = (s - 1) & J) {
            cost += std::min<std::uint64_t>(ones[s], coset - ones[s]);
            ones[s] = 0;
            if (s == 0) break;
        }
        best = std::min(best, cost);
        if (J == 0) break;
        std::uint64_t c = J & (0 - J), r = J + c; // next mask with the same popcount
        J = (((r ^ J) >> 2) / c) | r;
    }
    return Fraction(best, f.size());
}

Fraction dist_to_monotone_exact(const TruthTable& f) {
    require_vars(f, kMonotoneDistanceCap, "monotone distance");
    const int n = f.n_vars();
    const auto v = to_values(f);
    const auto rel = relevant_vars(v, n);
    const auto pv = project(v, rel);
    const std::uint64_t count = monotone_repair_count(pv, static_cast<int>(rel.size()));
    return Fraction(count << (n - rel.size()), f.size());
}

std::uint64_t monotone_violations(const TruthTable& f, std::uint64_t r) {
    const int n = f.n_vars();
    std::uint64_t count = 0;
    for (int j = 0; j < n; ++j) {
        const std::uint64_t b = pow2(j);
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if (!(x & b) && f.get(x ^ r) && !f.get((x | b) ^ r)) ++count;
    }
    return count;
}

Fraction dist_to_unate_exact(const TruthTable& f) {
    require_vars(f, kUnateDistanceCap, "unate distance");
    const int n = f.n_vars();
    const auto v = to_values(f);
    const auto rel = relevant_vars(v, n);
    const int k = static_cast<int>(rel.size());
    if (k == 0) return Fraction(0, 1);
    const auto pv = project(v, rel);

    // Split relevant directions into U (f already monotone or antimonotone there) and W (the rest).
    std::vector<int> U, W;
    std::uint64_t preferred = 0;
    for (int j = 0; j < k; ++j) {
        const std::uint64_t b = pow2(j);
        bool up = false, down = false;
        for (std::uint64_t x = 0; x < pv.size(); ++x)
            if (!(x & b)) {
                if (pv[x] < pv[x | b]) up = true;
                if (pv[x] > pv[x | b]) down = true;
            }
        if (up && down) {
            W.push_back(j);
        } else {
            U.push_back(j);
            if (down) preferred |= pow2(static_cast<int>(U.size()) - 1);
        }
    }
    const int u = static_cast<int>(U.size()), w = static_cast<int>(W.size());
    auto deposit = [](std::uint64_t bits, const std::vector<int>& pos) {
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if ((bits >> i) & 1) x |= pow2(pos[i]);
        return x;
    };

    // Lower bound per W-orientation: restrictions to the U-subcubes are repaired independently.
    std::vector<std::uint64_t> lower(pow2(w), 0);
    constexpr int kBoundCap = 12;
    if (w <= kBoundCap) {
        std::map<std::vector<std::uint8_t>, std::uint64_t> subs;
        for (std::uint64_t z = 0; z < pow2(u); ++z) {
            std::vector<std::uint8_t> sub(pow2(w));
            const std::uint64_t base = deposit(z, U);
            for (std::uint64_t y = 0; y < sub.size(); ++y) sub[y] = pv[base | deposit(y, W)];
            ++subs[sub];
        }
        std::vector<std::uint8_t> oriented(pow2(w));
        for (const auto& [sub, mult] : subs)
            for (std::uint64_t rw = 0; rw < pow2(w); ++rw) {
                for (std::uint64_t y = 0; y < sub.size(); ++y) oriented[y] = sub[y ^ rw];
                lower[rw] += mult * monotone_repair_count(oriented, w);
            }
    }
    std::vector<std::uint64_t> order(pow2(w));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return lower[a] < lower[b]; });

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint8_t> oriented(pv.size());
    for (std::uint64_t rw : order) {
        if (lower[rw] >= best) break;
        for (std::uint64_t t = 0; t < pow2(u); ++t) {
            const std::uint64_t r = deposit(rw, W) | deposit(preferred ^ t, U);
            for (std::uint64_t x = 0; x < pv.size(); ++x) oriented[x] = pv[x ^ r];
            best = std::min(best, monotone_repair_count(oriented, k));
            if (best <= lower[rw]) break;
        }
    }
    return Fraction(best << (n - k), f.size());
}

TvEstimate tv_from_samples(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, int q_bits,
                           std::uint64_t bootstrap_seed, int bootstrap_reps) {
    if (q_bits < 0 || q_bits > kTvMaxBits)
        throw CapacityError("outcome space of 2^" + std::to_string(q_bits) + " cells is too large to tabulate");
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
    const std::size_t cells = std::size_t{1} << q_bits;
    auto tv_of = [&](const std::vector<std::uint64_t>& ca, const std::vector<std::uint64_t>& cb, double na, double nb) {
        double s = 0;
        for (std::size_t c = 0; c < cells; ++c) s += std::abs(ca[c] / na - cb[c] / nb);
        return s / 2;
    };
    std::vector<std::uint64_t> ca(cells, 0), cb(cells, 0);
    for (auto o : a) {
        if (o >= cells) throw std::invalid_argument("outcome outside declared space");
        ++ca[o];
    }
    for (auto o : b) {
        if (o >= cells) throw std::invalid_argument("outcome outside declared space");
        ++cb[o];
    }
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    TvEstimate est;
    est.tv = tv_of(ca, cb, na, nb);
    est.samples = std::min(a.size(), b.size());

    std::vector<double> boot;
    boot.reserve(bootstrap_reps);
    Stream rng(bootstrap_seed);
    std::vector<std::uint64_t> ra(cells), rb(cells);
    for (int rep = 0; rep < bootstrap_reps; ++rep) {
        std::fill(ra.begin(), ra.end(), 0);
        std::fill(rb.begin(), rb.end(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) ++ra[a[rng.below(a.size())]];
        for (std::size_t i = 0; i < b.size(); ++i) ++rb[b[rng.below(b.size())]];
        boot.push_back(tv_of(ra, rb, na, nb));
    }
    if (!boot.empty()) {
        std::sort(boot.begin(), boot.end());
        auto q = [&](double p) { return boot[static_cast<std::size_t>(p * (boot.size() - 1) + 0.5)]; };
        // percentile interval of the resampled plug-in; near TV 0 both are biased upward,
        // so the interval can sit entirely above the point estimate
        est.ci_lo = q(0.025);
        est.ci_hi = q(0.975);
    } else {
        est.ci_lo = est.ci_hi = est.tv;
    }
    return est;
}

TvEstimate tv_distance_empirical(const OutcomeSampler& s1, const OutcomeSampler& s2, int q_bits, std::uint64_t samples,
                                 std::uint64_t bootstrap_seed, int bootstrap_reps) {
    if (samples < 10000) throw std::invalid_argument("tv estimation needs at least 10^4 samples");
    if (q_bits < 0 || q_bits > kTvMaxBits)
        throw CapacityError("outcome space of 2^" + std::to_string(q_bits) + " cells is too large to tabulate");
    std::vector<std::uint32_t> a(samples), b(samples);
    for (std::uint64_t i = 0; i < samples; ++i) {
        a[i] = s1(i);
        b[i] = s2(i);
    }
    return tv_from_samples(a, b, q_bits, bootstrap_seed, bootstrap_reps);
}

} // namespace rejsamp
