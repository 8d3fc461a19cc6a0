#include "rejsamp/analytics.hpp"
#include "rejsamp/harness.hpp"

#include <gtest/gtest.h>

using namespace rejsamp;

namespace {

Transcript make(std::vector<TranscriptEntry> entries) {
    Transcript t;
    t.entries = std::move(entries);
    t.total_cost = cost(t);
    return t;
}

} // namespace

TEST(Decompose, ComponentsLayersAndCycles) {
    // path 2-5-3 and triangle 6-7-8 on 8 vertices
    auto t = make({{{2, 5}, Response::pair(2, 5)},
                   {{3, 5}, Response::pair(3, 5)},
                   {{6, 7, 8}, Response::pair(6, 7)},
                   {{7, 8}, Response::pair(7, 8)},
                   {{6, 8}, Response::pair(6, 8)},
                   {{1}, Response::lone(1)}});
    auto d = decompose(t, 8);
    ASSERT_EQ(d.components.size(), 2u);
    const auto& c0 = d.components[0];
    EXPECT_EQ(c0.root, 2);
    EXPECT_EQ(c0.vertices, (std::vector<int>{2, 3, 5}));
    EXPECT_EQ(c0.odd, (std::vector<int>{2, 3}));
    EXPECT_EQ(c0.even, (std::vector<int>{5}));
    EXPECT_TRUE(c0.acyclic);
    EXPECT_FALSE(d.components[1].acyclic);
    EXPECT_EQ(d.V(), 6u);
    EXPECT_FALSE(event_ET(d, 8));
}

TEST(Events, TreeSizeIsStrict) {
    // n = 16, ceil(log2 n) = 4: a 3-vertex path is small, a 4-vertex path is not
    auto small = make({{{1, 2}, Response::pair(1, 2)}, {{2, 3}, Response::pair(2, 3)}});
    EXPECT_TRUE(event_ET(decompose(small, 16), 16));
    auto big = make({{{1, 2}, Response::pair(1, 2)}, {{2, 3}, Response::pair(2, 3)}, {{3, 4}, Response::pair(3, 4)}});
    EXPECT_FALSE(event_ET(decompose(big, 16), 16));
    EXPECT_TRUE(event_ET(decompose(make({}), 16), 16));
}

TEST(Events, NonEmptyBound) {
    EXPECT_EQ(ef_bound(1024), 0u);
    EXPECT_EQ(ef_bound(65536), 1u);
    EXPECT_EQ(ef_bound(1 << 20), 6u); // 2^20 / 20^4
    auto t = make({{{1}, Response::empty()}, {{1}, Response::lone(1)}});
    EXPECT_EQ(non_empty_responses(t), 1u);
    EXPECT_FALSE(event_EF(t, 1024));
    EXPECT_TRUE(event_EF(make({{{1}, Response::empty()}}), 1024));
}

TEST(Events, BalanceSign) {
    Partition A(8, {1, 2, 3, 4});
    // query {1,2,5}: |L cap A| - |L \ A| = 1; lone 1 is in A so subtract
    auto t = make({{{1, 2, 5}, Response::lone(1)}});
    EXPECT_EQ(balance_statistic(t, A).B, -1);
    // lone 5 outside A adds
    auto u = make({{{1, 2, 5}, Response::lone(5)}, {{5, 6, 7}, Response::lone(6)}});
    EXPECT_EQ(balance_statistic(u, A).B, 1 + (-3));
    EXPECT_TRUE(balance_statistic(u, A).e_B); // |B| = 2 <= 8/3
    auto big = make({{{5, 6, 7, 8}, Response::lone(6)}});
    EXPECT_FALSE(balance_statistic(big, A).e_B); // 4 > 8/3
    EXPECT_TRUE(balance_statistic(big, A, 2.0).e_B);
}

TEST(Events, WStatistic) {
    Partition A(8, {1, 2, 3, 4});
    // component rooted at 2 (in A) with layers {2,6} odd and {5} even -> counts odd
    auto t = make({{{2, 5}, Response::pair(2, 5)}, {{5, 6}, Response::pair(5, 6)}});
    auto w = w_statistic(decompose(t, 8), A);
    EXPECT_EQ(w.W, 2);
    EXPECT_EQ(w.V, 3);
    // root 5 outside A counts the even layer
    auto u = make({{{5, 7}, Response::pair(5, 7)}});
    EXPECT_EQ(w_statistic(decompose(u, 8), A).W, 1);
}

TEST(Consistency, HandBuilt) {
    Partition A(6, {1, 2, 3});
    auto inside = make({{{1, 2}, Response::pair(1, 2)}});
    auto across = make({{{1, 4}, Response::pair(1, 4)}});
    auto d_in = decompose(inside, 6), d_across = decompose(across, 6);
    EXPECT_TRUE(consistency(d_in, A, GraphFamily::TwoCliques));
    EXPECT_FALSE(consistency(d_in, A, GraphFamily::CompleteBipartite));
    EXPECT_TRUE(consistency(d_across, A, GraphFamily::CompleteBipartite));
    EXPECT_FALSE(consistency(d_across, A, GraphFamily::TwoCliques));
}

// the true partition always explains its own observations
TEST(Consistency, SoundOnGeneratedTranscripts) {
    for (GraphFamily fam : {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite}) {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const int n = 8 + 2 * static_cast<int>(seed % 10);
            Partition p = sample_partition(n, seed);
            Graph g = build_graph(p, fam);
            auto t = random_query_transcript(g, 6 * n, 3, seed);
            auto d = decompose(t, n);
            EXPECT_TRUE(consistency(d, p, fam));
            auto e = analyze(t, p);
            EXPECT_TRUE(fam == GraphFamily::TwoCliques ? e.e_C_yes : e.e_C_no);
        }
    }
}

TEST(Events, AnalyzeRecomputable) {
    Partition p = sample_partition(64, 3);
    Graph g = build_graph(p, GraphFamily::TwoCliques);
    auto t = random_query_transcript(g, 200, 4, 5);
    auto e = analyze(t, p);
    auto d = decompose(t, 64);
    EXPECT_EQ(e.B, balance_statistic(t, p).B);
    EXPECT_EQ(e.W, w_statistic(d, p).W);
    EXPECT_EQ(e.V, static_cast<std::int64_t>(d.V()));
    EXPECT_EQ(e.cost, 200u);
    EXPECT_EQ(e.components, d.components.size());
    EXPECT_EQ(e.non_empty, non_empty_responses(t));
}
