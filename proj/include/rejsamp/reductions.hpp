#pragma once

#include "rejsamp/boolfn.hpp"
#include "rejsamp/distinguisher.hpp"
#include "rejsamp/oracle.hpp"
#include "rejsamp/unate.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace rejsamp {

// Queries over 2n variables; the hidden graph on n vertices is identified with Mbar,
// vertex t being the t-th smallest element of Mbar.
using QueryBatch = std::vector<BitVec>;
using SimulatedAnswers = std::vector<std::uint8_t>;

// Non-adaptive tester: decision on the q answer bits (true = accept).
using BatchDecision = std::function<bool(const SimulatedAnswers&)>;

struct ReductionOutcome {
    Verdict verdict = Verdict::OutputG1;
    SimulatedAnswers answers;
    std::uint64_t cost = 0;
};

// Maps Mbar (sorted) to graph vertices 1..n and back.
class VertexMap {
public:
    VertexMap(int n_vars, const std::vector<int>& M);
    int to_vertex(int var) const { return vertex_[var]; } // 0 if var is in M
    int to_var(int vertex) const { return Mbar_[vertex - 1]; }
    const std::vector<int>& Mbar() const { return Mbar_; }

private:
    std::vector<int> Mbar_;
    std::vector<int> vertex_;
};

// ---- juntas ----

struct JuntaGroup {
    std::vector<std::size_t> members; // positions in the batch, increasing
    std::vector<int> L;               // variables of Mbar where two members disagree, sorted
    bool first_half = false;          // Gamma_M(z) <= N/2, i.e. z at min(M) is 0
};

std::vector<JuntaGroup> group_queries_junta(const QueryBatch& batch, const std::vector<int>& M);

SimulatedAnswers simulate_junta_answers(const std::vector<JuntaGroup>& groups, const QueryBatch& batch,
                                        OracleSession& session, const std::vector<int>& M, std::uint64_t seed);

// Samples M from the seed when not given. Accept maps to OutputG1.
ReductionOutcome run_junta_reduction(const BatchDecision& tester, const QueryBatch& batch, OracleSession& session,
                                     std::uint64_t seed, std::optional<std::vector<int>> M = std::nullopt);

// ---- unateness ----

// Everything the reductions draw before touching the oracle.
struct UnateSetup {
    std::vector<int> M;
    int m1 = 0, m2 = 0;
    std::shared_ptr<const TermSet> terms;
};
UnateSetup sample_unate_setup(int n_vars, std::uint64_t seed);

// Adaptive tester: calls ask(z) at most q times, returns accept.
using AskFn = std::function<std::uint8_t(const BitVec&)>;
using AdaptiveTester = std::function<bool(const AskFn& ask)>;

// Issues q queries of Mbar up front (cost q*n), then answers the tester on the fly.
// Accept maps to OutputG2.
ReductionOutcome run_unate_adaptive_reduction(const AdaptiveTester& tester, int q, OracleSession& session,
                                              std::uint64_t seed, std::optional<UnateSetup> setup = std::nullopt);

struct UnateGroups {
    std::vector<std::size_t> below, above, zero_star, one_star; // Q_M^(-), Q_M^(+), Q_*^(0), Q_*^(1)
    struct Indexed {
        std::uint64_t index = 0;
        std::vector<std::size_t> members; // increasing batch positions
        std::vector<int> L;               // disagreement set in Mbar
        std::vector<int> Lbar0, Lbar1;    // Mbar \ L split by the common value
        std::size_t rep = 0;              // lexicographically smallest member
    };
    std::vector<Indexed> indexed; // in order of first appearance
};

UnateGroups group_queries_unate(const QueryBatch& batch, const UnateSetup& setup);

struct UnateSimulation {
    SimulatedAnswers answers;
    std::uint64_t cost = 0;
};
UnateSimulation simulate_unate_answers(const UnateGroups& groups, const QueryBatch& batch, const UnateSetup& setup,
                                       OracleSession& session, std::uint64_t seed);

ReductionOutcome run_unate_nonadaptive_reduction(const BatchDecision& tester, const QueryBatch& batch,
                                                 OracleSession& session, std::uint64_t seed,
                                                 std::optional<UnateSetup> setup = std::nullopt);

// q <= n^{3/2} / ceil(log2 n)^8; violating it only earns a warning.
bool unate_nonadaptive_budget_ok(int n, std::size_t q);

// ---- tester lifting ----

// A tolerant k-junta tester for functions on input_size(k) variables.
using JuntaTester = std::function<bool(const BoolFn& g, int k)>;

struct LiftPlan {
    int parity_vars = 0; // n'
    int total_vars = 0;  // m = n + n'
    int k = 0;           // ceil(alpha m)
    int dummy_vars = 0;
};
LiftPlan lift_plan(int n, double alpha, const std::function<int(int)>& input_size);

bool lift_junta_tester(const JuntaTester& tester, const std::function<int(int)>& input_size, double alpha,
                       const BoolFn& f);

} // namespace rejsamp
