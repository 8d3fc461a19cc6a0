#include "rejsamp/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace rejsamp;

TEST(Oracle, ResponseLawMatchesEdgeCounts) {
    // path 1-2-3-4 plus chord 1-3: five edges
    Graph g(5, {{1, 2}, {2, 3}, {3, 4}, {1, 3}, {4, 5}});
    OracleSession s(g, 3);
    const std::vector<int> L{1, 3};
    const int reps = 50000;
    int pair = 0, lone1 = 0, lone3 = 0, empty = 0;
    for (int i = 0; i < reps; ++i) {
        Response r = s.query(L);
        if (r.kind == Response::Kind::EdgePair) {
            EXPECT_EQ(r, Response::pair(1, 3));
            ++pair;
        } else if (r.kind == Response::Kind::Lone) {
            (r.a == 1 ? lone1 : lone3)++;
            EXPECT_TRUE(r.a == 1 || r.a == 3);
        } else {
            ++empty;
        }
    }
    // edges: {1,3} both in L; {1,2} lone 1; {2,3},{3,4} lone 3; {4,5} empty
    EXPECT_NEAR(pair / double(reps), 0.2, 0.01);
    EXPECT_NEAR(lone1 / double(reps), 0.2, 0.01);
    EXPECT_NEAR(lone3 / double(reps), 0.4, 0.01);
    EXPECT_NEAR(empty / double(reps), 0.2, 0.01);
}

TEST(Oracle, CostLedger) {
    Graph g(6, {{1, 2}, {3, 4}, {5, 6}});
    OracleSession s(g, 1);
    s.query({1, 2, 3});
    s.query({});
    s.query({6, 5, 5}); // duplicates collapse
    EXPECT_EQ(s.transcript().total_cost, 5u);
    EXPECT_EQ(cost(s.transcript()), 5u);
    EXPECT_EQ(s.transcript().entries.size(), 3u);
    EXPECT_TRUE(s.transcript().entries[1].response.is_empty());
}

TEST(Oracle, FullQueryAlwaysReturnsTheEdge) {
    Graph g(4, {{1, 2}, {3, 4}});
    OracleSession s(g, 9);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(s.query({1, 2, 3, 4}).kind, Response::Kind::EdgePair);
}

TEST(Oracle, Errors) {
    Graph empty(3, {});
    OracleSession s(empty, 1);
    EXPECT_THROW(s.query({1}), std::domain_error);
    Graph g(3, {{1, 2}});
    OracleSession t(g, 1);
    EXPECT_THROW(t.query({0}), std::invalid_argument);
    EXPECT_THROW(t.query({4}), std::invalid_argument);
}

TEST(Oracle, SeedDeterminesTranscript) {
    Graph g(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
    auto run = [&](std::uint64_t seed) {
        OracleSession s(g, seed);
        std::vector<Response> out;
        for (int i = 0; i < 30; ++i) out.push_back(s.query({1, 3, 5}));
        return out;
    };
    EXPECT_EQ(run(4), run(4));
    EXPECT_NE(run(4), run(5));
}

TEST(Oracle, TranscriptRoundTrip) {
    Graph g(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    OracleSession s(g, 12);
    s.query({1, 2});
    s.query({3});
    s.query({});
    s.query({1, 2, 3, 4, 5});
    std::stringstream ss;
    write_transcript(ss, s.transcript(), 12, g.hash());
    Transcript t = read_transcript(ss);
    ASSERT_EQ(t.entries.size(), 4u);
    EXPECT_EQ(t.total_cost, s.transcript().total_cost);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(t.entries[i].query, s.transcript().entries[i].query);
        EXPECT_EQ(t.entries[i].response, s.transcript().entries[i].response);
    }
    std::stringstream bad("Q 2 1 2 | R MAYBE\n");
    EXPECT_THROW(read_transcript(bad), std::invalid_argument);
}
