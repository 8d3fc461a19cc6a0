#pragma once

#include "rejsamp/fraction.hpp"
#include "rejsamp/rng.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rejsamp {

struct Edge {
    int u = 0;
    int v = 0; // u < v
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GraphFamily { TwoCliques, CompleteBipartite };

std::string family_name(GraphFamily f);       // "g1" / "g2"
GraphFamily parse_family(const std::string& s); // accepts g1, g2, two-cliques, bipartite

// Simple undirected graph on vertices 1..n. Immutable once built.
class Graph {
public:
    Graph() = default;
    // Edges may be given in either orientation; duplicates and self-loops are rejected.
    Graph(int n_vertices, std::vector<Edge> edges);

    int n_vertices() const { return n_; }
    std::size_t n_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int u, int v) const;
    std::vector<std::vector<int>> adjacency() const;
    std::uint64_t hash() const; // FNV-1a over (n, edge list)

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

class Partition {
public:
    Partition() = default;
    Partition(int n_vertices, std::vector<int> A);

    int n_vertices() const { return n_; }
    const std::vector<int>& A() const { return a_; }
    std::vector<int> complement() const;
    bool contains(int v) const { return in_a_[v] != 0; }

private:
    int n_ = 0;
    std::vector<int> a_;
    std::vector<char> in_a_;
};

Partition sample_partition(int n, std::uint64_t seed);
Partition sample_partition(int n, Stream& rng);
Graph build_graph(const Partition& p, GraphFamily family);

// Counts edges with one endpoint in S1 and the other in S2, each edge once.
std::uint64_t edges_between(const Graph& g, const std::vector<int>& S1, const std::vector<int>& S2);

// min over |S| >= min_size of (E(S,S) + E(S,S^c)) / |E|
Fraction chi_junta(const Graph& g, int min_size);
Fraction chi_junta_bruteforce(const Graph& g, int min_size);
Fraction chi_junta_family(GraphFamily family, int n_vertices, int min_size);

// min over S of (E(S,S) + E(S^c,S^c)) / |E|, i.e. one minus the max-cut fraction
Fraction chi_unate(const Graph& g);
Fraction chi_unate_bruteforce(const Graph& g);
Fraction chi_unate_family(GraphFamily family, int n_vertices);

// Identifies K_{n/2} + K_{n/2} or K_{n/2,n/2}; nullopt for anything else.
std::optional<GraphFamily> recognize_family(const Graph& g);

inline constexpr int kBruteForceVertexCap = 24;

void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
void write_partition(std::ostream& os, const Partition& p);
Partition read_partition(std::istream& is);

} // namespace rejsamp
