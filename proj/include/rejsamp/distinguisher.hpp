#pragma once

#include "rejsamp/graph.hpp"
#include "rejsamp/oracle.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace rejsamp {

enum class Verdict { OutputG1, OutputG2 };

const char* verdict_name(Verdict v); // "G1" / "G2"

Graph observed_graph(const Transcript& t, int n_vertices);

// Odd cycle as a vertex sequence v0..v_{k-1}, k odd, closed by the edge v_{k-1}-v0.
std::optional<std::vector<int>> find_odd_cycle(const Graph& g);
bool is_valid_odd_cycle(const Graph& g, const std::vector<int>& cycle);

struct DistinguisherRun {
    Verdict verdict = Verdict::OutputG2;
    std::uint64_t cost = 0;
    std::optional<std::vector<int>> cycle;
};

// `repetitions` queries of L = [n]; OutputG1 iff the observed edges contain an odd cycle.
DistinguisherRun run_odd_cycle_distinguisher(OracleSession& session, int repetitions);

// 8 * n * ceil(log2 n)
int default_repetitions(int n);

using Algorithm = std::function<Verdict(OracleSession&)>;

Algorithm odd_cycle_algorithm(int repetitions);

struct TrialRow {
    int trial = 0;
    GraphFamily family = GraphFamily::TwoCliques;
    Verdict verdict = Verdict::OutputG2;
    std::uint64_t cost = 0;
    bool odd_cycle_found = false;
};

// Seed layout: trial t of family f uses derive_seed(derive_seed(master, f), t); the
// partition and the oracle stream are derived from that with indices 0 and 1.
std::uint64_t trial_seed(std::uint64_t master, GraphFamily family, int trial);

// family == nullopt draws the family per trial from a fair seeded coin.
std::vector<TrialRow> run_distinguisher_trials(int n, std::optional<GraphFamily> family, int repetitions, int trials,
                                               std::uint64_t master, int jobs = 1);

struct AdvantageReport {
    int trials = 0;
    int g1_hits = 0; // OutputG1 count on the G1 side
    int g2_hits = 0; // OutputG1 count on the G2 side
    double p1 = 0, p2 = 0, advantage = 0;
    double half_width_p1 = 0, half_width_p2 = 0;
};

AdvantageReport estimate_advantage(const Algorithm& alg, int n, int trials, std::uint64_t master, int jobs = 1);

// Two-sided 95% Wilson score interval.
struct Interval {
    double lo = 0, hi = 0;
    double half_width() const { return (hi - lo) / 2; }
};
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

} // namespace rejsamp
