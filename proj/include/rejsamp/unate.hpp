#pragma once

#include "rejsamp/boolfn.hpp"
#include "rejsamp/distinguisher.hpp"
#include "rejsamp/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace rejsamp {

// Result of the multiplexer: the unique satisfied term, or none / several.
struct TermHit {
    enum class Kind { Unique, ZeroStar, OneStar };
    Kind kind = Kind::ZeroStar;
    std::uint64_t index = 0; // 1-based, only for Unique
    friend bool operator==(const TermHit&, const TermHit&) = default;
};

// N terms, each a uniform s-subset of a pool. Term i is drawn from its own stream by
// sequential rejection, so its first elements can be generated without the rest; large
// families are never stored.
class TermSet {
public:
    static constexpr std::uint64_t kMaterializeCap = std::uint64_t{1} << 16;

    TermSet(std::vector<int> pool, int s, std::uint64_t count, std::uint64_t key);
    static TermSet from_list(std::vector<int> pool, std::vector<std::vector<int>> terms);

    const std::vector<int>& pool() const { return pool_; }
    int term_size() const { return s_; }
    std::uint64_t count() const { return count_; }
    bool materialized() const { return !flat_.empty() || s_ == 0; }

    std::vector<int> term(std::uint64_t i) const; // sorted, 1-based i

    // Classifies each input (bit vectors over n variables; only pool coordinates are read).
    std::vector<TermHit> classify(const std::vector<BitVec>& xs) const;
    TermHit classify(const BitVec& x) const;

private:
    TermSet() = default;
    template <class Visit>
    void scan(std::uint64_t chunk_all, const std::vector<std::uint64_t>& ones, Visit&& visit) const;

    std::vector<int> pool_;
    int s_ = 0;
    std::uint64_t count_ = 0;
    std::uint64_t key_ = 0;
    std::vector<int> flat_; // count * s elements (unsorted draw order) when materialized
};

TermSet sample_terms(const std::vector<int>& core, std::uint64_t count, int s, std::uint64_t seed);

struct UnateSpec {
    enum class Kind { Dictator, AntiDictator, TriParity };
    Kind kind = Kind::Dictator;
    int j1 = 0, j2 = 0, j3 = 0; // TriParity: edge j1 < j2, j3 in {m1, m2}
    std::uint8_t negate = 0;    // 1 iff j3 == m2
    friend bool operator==(const UnateSpec&, const UnateSpec&) = default;
};

struct UnateBand {
    int lo = 0, hi = 0; // inclusive band for |x|_M|
};
UnateBand unate_band(int n); // n/4 -/+ floor(sqrt n)

class UnateInstance {
public:
    // terms == nullptr draws N = 2^ceil(sqrt n) terms of size ceil(sqrt n) from the seed.
    UnateInstance(int n, std::vector<int> M, int m1, int m2, std::vector<int> A, GraphFamily family,
                  std::uint64_t seed, std::shared_ptr<const TermSet> terms = nullptr);
    static UnateInstance sample(int n, GraphFamily family, std::uint64_t seed);

    UnateInstance(const UnateInstance& o);
    UnateInstance& operator=(const UnateInstance&) = delete;

    int n() const { return n_; }
    const std::vector<int>& M() const { return M_; }
    const std::vector<int>& Mbar() const { return Mbar_; }
    int m1() const { return m1_; }
    int m2() const { return m2_; }
    const std::vector<int>& A() const { return A_; }
    GraphFamily family() const { return family_; }
    std::uint64_t seed() const { return seed_; }
    const TermSet& terms() const { return *terms_; }
    std::shared_ptr<const TermSet> shared_terms() const { return terms_; }
    std::uint64_t N() const { return terms_->count(); }
    const Graph& local_graph() const { return local_; }
    int global_vertex(int local) const { return Mbar_[local - 1]; }
    UnateBand band() const { return unate_band(n_); }

    TermHit gamma_T(const BitVec& x) const { return terms_->classify(x); }
    UnateSpec subfunction(std::uint64_t i) const; // thread-safe, memoized
    std::size_t memo_size() const;

    std::uint8_t eval(const BitVec& x) const;
    BoolFn as_function() const;
    TruthTable table() const;

private:
    int n_;
    std::vector<int> M_, Mbar_;
    int m1_, m2_;
    std::vector<int> A_;
    GraphFamily family_;
    std::uint64_t seed_;
    std::shared_ptr<const TermSet> terms_;
    Graph local_;
    std::uint64_t sub_key_;
    mutable std::mutex mu_;
    mutable std::map<std::uint64_t, UnateSpec> memo_;
};

// Picks M, (m1, m2) and A for an instance on n variables from a stream.
struct UnateSkeleton {
    std::vector<int> M;
    int m1 = 0, m2 = 0;
};
UnateSkeleton sample_unate_skeleton(int n, Stream& rng);

struct GammaEstimate {
    double estimate = 0;
    double ci_lo = 0, ci_hi = 0; // Wilson 95%
    std::uint64_t samples = 0;
};
// Fraction of uniform x in the band with a unique satisfied term.
GammaEstimate estimate_gamma(const UnateInstance& f, std::uint64_t samples, std::uint64_t seed);
Fraction exact_gamma(const UnateInstance& f); // n <= 24

// Repairs every TriParity region to the closest 3-variable function that is unate with
// orientation: M, m1 and S increasing; m2 and Mbar \ S decreasing.
BoolFn witness_unate(const UnateInstance& f, const std::vector<int>& S);
TruthTable witness_unate_table(const UnateInstance& f, const std::vector<int>& S);
// The repaired gadget as an 8-entry table over (x_j1, x_j2, x_j3) -> bit index a + 2b + 4c.
std::uint8_t repaired_gadget(bool j1_in_S, bool j2_in_S, bool j3_is_m2);

void write_unate_descriptor(std::ostream& os, const UnateInstance& f);
std::unique_ptr<UnateInstance> read_unate_descriptor(std::istream& is);

} // namespace rejsamp
