#include "rejsamp/graph.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <sstream>

using namespace rejsamp;

namespace {

// min over |S| >= k of the fraction of edges touching S, by plain enumeration
Fraction naive_chi_junta(const Graph& g, int k) {
    const int n = g.n_vertices();
    std::uint64_t best = g.n_edges();
    for (std::uint64_t S = 0; S < (std::uint64_t{1} << n); ++S) {
        if (std::popcount(S) < k) continue;
        std::uint64_t touched = 0;
        for (const auto& e : g.edges()) touched += ((S >> (e.u - 1)) | (S >> (e.v - 1))) & 1;
        best = std::min(best, touched);
    }
    return Fraction(best, g.n_edges());
}

Graph random_graph(int n, double p, Stream& rng) {
    std::vector<Edge> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (rng.uniform01() < p) edges.push_back({u, v});
    if (edges.empty()) edges.push_back({1, 2});
    return Graph(n, edges);
}

} // namespace

TEST(Graph, FamilyEdgeCounts) {
    for (int n = 2; n <= 30; n += 2) {
        auto p = sample_partition(n, 11);
        EXPECT_EQ(p.A().size(), static_cast<std::size_t>(n / 2));
        auto g1 = build_graph(p, GraphFamily::TwoCliques);
        auto g2 = build_graph(p, GraphFamily::CompleteBipartite);
        const std::uint64_t h = n / 2;
        EXPECT_EQ(g1.n_edges(), h * (h - 1));
        EXPECT_EQ(g2.n_edges(), h * h);
        for (const auto& e : g1.edges()) EXPECT_EQ(p.contains(e.u), p.contains(e.v));
        for (const auto& e : g2.edges()) EXPECT_NE(p.contains(e.u), p.contains(e.v));
        if (n >= 4) {
            EXPECT_EQ(recognize_family(g1), GraphFamily::TwoCliques);
        }
        EXPECT_EQ(recognize_family(g2), GraphFamily::CompleteBipartite);
    }
}

TEST(Graph, RejectsBadInput) {
    EXPECT_THROW(Graph(3, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph(3, {{1, 2}, {2, 1}}), std::invalid_argument);
    EXPECT_THROW(Graph(3, {{1, 4}}), std::invalid_argument);
    EXPECT_THROW(Partition(4, {1, 1}), std::invalid_argument);
    EXPECT_THROW(sample_partition(5, 1), std::invalid_argument);
    EXPECT_THROW(parse_family("g3"), std::invalid_argument);
}

TEST(Graph, RecognizeRejectsOthers) {
    EXPECT_FALSE(recognize_family(Graph(4, {{1, 2}, {2, 3}})).has_value());
    // a 4-cycle on 4 vertices is K_{2,2}
    EXPECT_EQ(recognize_family(Graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}})), GraphFamily::CompleteBipartite);
}

TEST(Graph, EdgesBetween) {
    Graph g(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    EXPECT_EQ(edges_between(g, {1}, {2, 4}), 2u);
    EXPECT_EQ(edges_between(g, {1, 2}, {1, 2}), 1u);
    EXPECT_EQ(edges_between(g, {1, 3}, {1, 3}), 0u);
}

TEST(Chi, BruteForceMatchesNaiveOnRandomGraphs) {
    Stream rng(21);
    for (int t = 0; t < 60; ++t) {
        int n = 3 + static_cast<int>(rng.below(8));
        Graph g = random_graph(n, 0.5, rng);
        int k = static_cast<int>(rng.below(n + 1));
        EXPECT_EQ(chi_junta_bruteforce(g, k), naive_chi_junta(g, k));
        Fraction want(g.n_edges() - oracle::max_cut(g), g.n_edges());
        EXPECT_EQ(chi_unate_bruteforce(g), want);
        EXPECT_EQ(chi_unate(g), want);
    }
}

TEST(Chi, FamilyClosedFormsMatchBruteForce) {
    for (int n = 4; n <= 16; n += 2)
        for (GraphFamily f : {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite})
            for (int k = 0; k <= n; ++k) {
                Graph g = build_graph(sample_partition(n, 100 + n), f);
                EXPECT_EQ(chi_junta(g, k), chi_junta_bruteforce(g, k)) << n << " " << k;
                EXPECT_EQ(chi_junta_family(f, n, k), naive_chi_junta(g, k));
            }
}

TEST(Chi, HalfSizeValues) {
    // two cliques: exactly 1/2 for every even vertex count
    for (int n = 4; n <= 20; n += 2) EXPECT_EQ(chi_junta_family(GraphFamily::TwoCliques, n, n / 2), Fraction(1, 2));
    // complete bipartite: 3/4 when n/2 is even, 1 - floor(h/2)ceil(h/2)/h^2 when h = n/2 is odd
    EXPECT_EQ(chi_junta_family(GraphFamily::CompleteBipartite, 8, 4), Fraction(3, 4));
    EXPECT_EQ(chi_junta_family(GraphFamily::CompleteBipartite, 6, 3), Fraction(7, 9));
    EXPECT_EQ(chi_junta_family(GraphFamily::CompleteBipartite, 10, 5), Fraction(19, 25));
    EXPECT_EQ(chi_unate_family(GraphFamily::CompleteBipartite, 10), Fraction(0, 1));
    // K_4 + K_4: the best cut of K_4 keeps 2 of 6 edges inside
    EXPECT_EQ(chi_unate_family(GraphFamily::TwoCliques, 8), Fraction(1, 3));
}

TEST(Chi, EdgelessAndCapacity) {
    EXPECT_THROW(chi_junta(Graph(3, {}), 1), std::domain_error);
    EXPECT_THROW(chi_unate(Graph(3, {})), std::domain_error);
    Graph path(25, {{1, 2}});
    EXPECT_THROW(chi_junta_bruteforce(path, 1), CapacityError);
}

TEST(Graph, EdgeListRoundTrip) {
    Graph g = build_graph(sample_partition(10, 5), GraphFamily::TwoCliques);
    std::stringstream ss;
    write_edge_list(ss, g);
    Graph h = read_edge_list(ss);
    EXPECT_EQ(h.edges(), g.edges());
    EXPECT_EQ(h.hash(), g.hash());
    std::stringstream bad("3 1\n2 2\n");
    EXPECT_THROW(read_edge_list(bad), std::invalid_argument);
}

TEST(Graph, PartitionRoundTrip) {
    auto p = sample_partition(12, 9);
    std::stringstream ss;
    write_partition(ss, p);
    auto q = read_partition(ss);
    EXPECT_EQ(q.A(), p.A());
    EXPECT_EQ(q.n_vertices(), 12);
    std::stringstream bad("4 2\n1\n");
    EXPECT_THROW(read_partition(bad), std::invalid_argument);
}

TEST(Graph, PartitionDeterministic) {
    EXPECT_EQ(sample_partition(20, 77).A(), sample_partition(20, 77).A());
    EXPECT_NE(sample_partition(20, 77).A(), sample_partition(20, 78).A());
}
