#pragma once

#include "rejsamp/graph.hpp"
#include "rejsamp/oracle.hpp"

#include <cstdint>
#include <vector>

namespace rejsamp {

struct Component {
    int root = 0;               // minimum vertex
    std::vector<int> vertices;  // sorted
    std::vector<Edge> edges;
    std::vector<int> odd, even; // BFS layers from the root; the root's layer counts as layer 1
    bool acyclic = true;
};

// Components of the observed graph over its non-isolated vertices, ordered by root.
struct ComponentDecomposition {
    std::vector<Component> components;
    std::uint64_t V() const; // total vertex count
};

ComponentDecomposition decompose(const Graph& observed);
ComponentDecomposition decompose(const Transcript& t, int n_vertices);

// Every component is a tree with fewer than ceil(log2 n) vertices.
bool event_ET(const ComponentDecomposition& d, int n);

// floor(n / ceil(log2 n)^4)
std::uint64_t ef_bound(int n);
std::uint64_t non_empty_responses(const Transcript& t);
bool event_EF(const Transcript& t, int n);

// Whether the hidden partition could have produced the observed components.
bool consistency(const ComponentDecomposition& d, const Partition& A, GraphFamily family);

struct BalanceResult {
    std::int64_t B = 0;
    bool e_B = true;
};
// B = sum over lone responses of (-1)^{[v in A]} (|L cap A| - |L cap A^c|); e_B iff |B| <= c n / ceil(log2 n).
BalanceResult balance_statistic(const Transcript& t, const Partition& A, double c = 1.0);

struct WStatistic {
    std::int64_t W = 0;
    std::int64_t V = 0;
    bool e_W = true;
};
// W = sum_i Y_i |C_i(odd)| + (1 - Y_i) |C_i(even)| with Y_i = [root in A]; e_W iff |W - V/2| <= sqrt(V) ceil(log2 n).
WStatistic w_statistic(const ComponentDecomposition& d, const Partition& A);

struct EventReport {
    bool e_T = true, e_F = true, e_B = true, e_C_yes = true, e_C_no = true, e_W = true;
    std::int64_t B = 0, W = 0, V = 0;
    std::uint64_t non_empty = 0, cost = 0;
    std::size_t components = 0;
};
// e_C_yes is consistency under TwoCliques, e_C_no under CompleteBipartite.
EventReport analyze(const Transcript& t, const Partition& A, double c = 1.0);

} // namespace rejsamp
