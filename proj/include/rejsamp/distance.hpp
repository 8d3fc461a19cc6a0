#pragma once

#include "rejsamp/boolfn.hpp"
#include "rejsamp/fraction.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace rejsamp {

inline constexpr int kJuntaDistanceCap = 16;
inline constexpr int kMonotoneDistanceCap = 16;
inline constexpr int kUnateDistanceCap = 16;

Fraction dist_between(const TruthTable& f, const TruthTable& g);
Fraction dist_between(const BoolFn& f, const BoolFn& g);

// min over k-subsets J of sum over cosets of min(#0, #1), divided by 2^n
Fraction dist_to_kjunta_exact(const TruthTable& f, int k);

// Minimum-cut closure: choose the up-set minimising disagreement with f.
Fraction dist_to_monotone_exact(const TruthTable& f);

// min over orientations r of dist_to_monotone(x -> f(x xor r)), searched by branch and bound:
// directions in which f is already unate are split off into subcubes whose summed
// monotone distances give an orientation-wise lower bound; full cuts are only run
// for orientations whose bound beats the best value found.
Fraction dist_to_unate_exact(const TruthTable& f);

// Number of cover edges (x, x + e_j) with g(x) = 1, g(x + e_j) = 0 for g(x) = f(x xor r).
std::uint64_t monotone_violations(const TruthTable& f, std::uint64_t r);

// Points to change to make a 0/1 value array on the n-cube monotone (min-cut value).
std::uint64_t monotone_repair_count(const std::vector<std::uint8_t>& values, int n);

struct TvEstimate {
    double tv = 0;
    double ci_lo = 0, ci_hi = 0; // 95% percentile bootstrap
    std::uint64_t samples = 0;
};

inline constexpr int kTvMaxBits = 20;

// Outcomes are codes in [0, 2^q_bits).
TvEstimate tv_from_samples(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, int q_bits,
                           std::uint64_t bootstrap_seed, int bootstrap_reps = 200);

using OutcomeSampler = std::function<std::uint32_t(std::uint64_t run)>;

TvEstimate tv_distance_empirical(const OutcomeSampler& s1, const OutcomeSampler& s2, int q_bits, std::uint64_t samples,
                                 std::uint64_t bootstrap_seed, int bootstrap_reps = 200);

} // namespace rejsamp
