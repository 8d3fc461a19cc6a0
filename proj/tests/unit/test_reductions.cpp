#include "rejsamp/distance.hpp"
#include "rejsamp/harness.hpp"
#include "rejsamp/junta.hpp"
#include "rejsamp/reductions.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace rejsamp;

namespace {

QueryBatch random_batch(int n_vars, int q, Stream& rng) {
    QueryBatch b;
    for (int i = 0; i < q; ++i) {
        BitVec z(n_vars);
        for (auto& x : z) x = rng.bit();
        b.push_back(z);
    }
    return b;
}

template <class Groups>
void expect_partition(const Groups& members_lists, std::size_t q) {
    std::multiset<std::size_t> seen;
    for (const auto& m : members_lists) seen.insert(m.begin(), m.end());
    ASSERT_EQ(seen.size(), q);
    for (std::size_t i = 0; i < q; ++i) EXPECT_EQ(seen.count(i), 1u);
}

} // namespace

TEST(VertexMap, OrdersComplement) {
    VertexMap vm(6, {2, 5, 6});
    EXPECT_EQ(vm.Mbar(), (std::vector<int>{1, 3, 4}));
    EXPECT_EQ(vm.to_vertex(3), 2);
    EXPECT_EQ(vm.to_vertex(5), 0);
    EXPECT_EQ(vm.to_var(3), 4);
}

TEST(JuntaReduction, GroupsPartitionTheBatch) {
    Stream rng(1);
    for (int t = 0; t < 20; ++t) {
        auto batch = perturbed_batch(16, 4, 3, 2, rng);
        Stream mr(t);
        auto M = sample_subset(mr, 16, 8);
        auto groups = group_queries_junta(batch, M);
        std::vector<std::vector<std::size_t>> lists;
        for (const auto& g : groups) {
            lists.push_back(g.members);
            EXPECT_TRUE(std::is_sorted(g.members.begin(), g.members.end()));
            for (auto q : g.members) {
                EXPECT_EQ(g.first_half, batch[q][M.front() - 1] == 0);
                for (int j : M) EXPECT_EQ(batch[q][j - 1], batch[g.members[0]][j - 1]);
            }
            for (int j : g.L) EXPECT_FALSE(std::binary_search(M.begin(), M.end(), j));
        }
        expect_partition(lists, batch.size());
    }
}

TEST(JuntaReduction, AnswersAreConsistentAndCostIsSumOfL) {
    const int n = 8;
    Stream rng(2);
    for (int t = 0; t < 50; ++t) {
        Graph g = build_graph(sample_partition(n, t), t % 2 ? GraphFamily::TwoCliques : GraphFamily::CompleteBipartite);
        OracleSession s(g, 100 + t);
        auto batch = perturbed_batch(2 * n, 3, 4, 3, rng);
        Stream mr(t);
        auto M = sample_subset(mr, 2 * n, n);
        VertexMap vm(2 * n, M);
        auto groups = group_queries_junta(batch, M);
        auto r = simulate_junta_answers(groups, batch, s, M, derive_seed(t, 9));
        std::uint64_t want_cost = 0;
        std::size_t entry = 0;
        for (const auto& grp : groups) {
            if (grp.first_half) {
                for (auto q : grp.members) {
                    std::uint8_t p = 0;
                    for (int j : M) p ^= batch[q][j - 1];
                    EXPECT_EQ(r[q], p);
                }
                continue;
            }
            want_cost += grp.L.size();
            const Response v = s.transcript().entries.at(entry++).response;
            // two members get equal bits iff they agree on the responded coordinates
            auto cls = [&](std::size_t q) {
                std::uint8_t c = 0;
                if (v.kind != Response::Kind::Empty) c ^= batch[q][vm.to_var(v.a) - 1];
                if (v.kind == Response::Kind::EdgePair) c ^= batch[q][vm.to_var(v.b) - 1];
                return c;
            };
            for (auto a : grp.members)
                for (auto b : grp.members) EXPECT_EQ(r[a] == r[b], cls(a) == cls(b));
        }
        EXPECT_EQ(entry, s.transcript().entries.size());
        EXPECT_EQ(s.transcript().total_cost, want_cost);
    }
}

TEST(JuntaReduction, VerdictMapping) {
    Graph g = build_graph(sample_partition(8, 1), GraphFamily::TwoCliques);
    OracleSession s(g, 2);
    Stream rng(3);
    auto batch = random_batch(16, 5, rng);
    EXPECT_EQ(run_junta_reduction([](const SimulatedAnswers&) { return true; }, batch, s, 4).verdict,
              Verdict::OutputG1);
    EXPECT_EQ(run_junta_reduction([](const SimulatedAnswers&) { return false; }, batch, s, 4).verdict,
              Verdict::OutputG2);
    EXPECT_THROW(run_junta_reduction([](const SimulatedAnswers&) { return true; }, random_batch(10, 2, rng), s, 4),
                 std::invalid_argument);
}

TEST(JuntaReduction, SeedReproducible) {
    Graph g = build_graph(sample_partition(8, 1), GraphFamily::CompleteBipartite);
    Stream rng(5);
    auto batch = perturbed_batch(16, 3, 3, 2, rng);
    auto accept = [](const SimulatedAnswers&) { return true; };
    OracleSession s1(g, 7), s2(g, 7);
    EXPECT_EQ(run_junta_reduction(accept, batch, s1, 11).answers, run_junta_reduction(accept, batch, s2, 11).answers);
}

TEST(UnateReduction, AdaptiveCostIsQTimesN) {
    for (int n : {8, 12}) {
        Graph g = build_graph(sample_partition(n, n), GraphFamily::TwoCliques);
        for (int q : {0, 1, 5, 9}) {
            OracleSession s(g, q);
            auto tester = [&](const AskFn& ask) {
                Stream rng(q);
                for (int i = 0; i < q; ++i) ask(random_batch(2 * n, 1, rng)[0]);
                return true;
            };
            auto r = run_unate_adaptive_reduction(tester, q, s, 3);
            EXPECT_EQ(r.cost, static_cast<std::uint64_t>(q) * n);
            EXPECT_EQ(r.answers.size(), static_cast<std::size_t>(q));
            EXPECT_EQ(r.verdict, Verdict::OutputG2);
        }
    }
}

TEST(UnateReduction, AdaptiveRejectsExtraQueries) {
    Graph g = build_graph(sample_partition(8, 1), GraphFamily::TwoCliques);
    OracleSession s(g, 1);
    auto greedy = [](const AskFn& ask) {
        BitVec z(16, 0);
        ask(z);
        ask(z);
        return true;
    };
    EXPECT_THROW(run_unate_adaptive_reduction(greedy, 1, s, 1), std::logic_error);
}

TEST(UnateReduction, AdaptiveAnswersFollowTheMultiplexer) {
    const int n = 8;
    auto setup = sample_unate_setup(2 * n, 4);
    Graph g = build_graph(sample_partition(n, 2), GraphFamily::CompleteBipartite);
    OracleSession s(g, 6);
    Stream rng(8);
    auto qs = random_batch(2 * n, 12, rng);
    auto r = run_unate_adaptive_reduction(
        [&](const AskFn& ask) {
            for (const auto& z : qs) ask(z);
            return false;
        },
        12, s, 9, setup);
    EXPECT_EQ(r.verdict, Verdict::OutputG1);
    const std::uint64_t N = setup.terms->count();
    for (std::size_t i = 0; i < qs.size(); ++i) {
        auto h = setup.terms->classify(qs[i]);
        if (h.kind == TermHit::Kind::ZeroStar) EXPECT_EQ(r.answers[i], 0);
        if (h.kind == TermHit::Kind::OneStar) EXPECT_EQ(r.answers[i], 1);
        if (h.kind == TermHit::Kind::Unique && 4 * h.index <= 3 * N)
            EXPECT_TRUE(r.answers[i] == qs[i][setup.m1 - 1] || r.answers[i] == (qs[i][setup.m2 - 1] ^ 1));
    }
}

TEST(UnateReduction, GroupsPartitionAndCostLaw) {
    const int n = 16;
    Stream rng(10);
    for (int t = 0; t < 30; ++t) {
        auto setup = sample_unate_setup(2 * n, t);
        auto batch = perturbed_batch(2 * n, 5, 3, 2, rng);
        auto groups = group_queries_unate(batch, setup);
        std::vector<std::vector<std::size_t>> lists{groups.below, groups.above, groups.zero_star, groups.one_star};
        for (const auto& gi : groups.indexed) {
            lists.push_back(gi.members);
            EXPECT_EQ(gi.L.size() + gi.Lbar0.size() + gi.Lbar1.size(), static_cast<std::size_t>(n));
            for (auto q : gi.members) EXPECT_LE(batch[gi.rep], batch[q]);
        }
        expect_partition(lists, batch.size());

        Graph g = build_graph(sample_partition(n, t), GraphFamily::TwoCliques);
        OracleSession s(g, t);
        auto sim = simulate_unate_answers(groups, batch, setup, s, 3);
        std::uint64_t want = 0;
        const int lg = ceil_log2(n);
        const std::uint64_t N = setup.terms->count();
        for (const auto& gi : groups.indexed) {
            if (4 * gi.index <= 3 * N) continue;
            want += gi.L.size() * lg <= static_cast<std::size_t>(n) ? gi.L.size() : n;
        }
        EXPECT_EQ(sim.cost, want);
        for (auto q : groups.above) EXPECT_EQ(sim.answers[q], 1);
        for (auto q : groups.below) EXPECT_EQ(sim.answers[q], 0);
        for (auto q : groups.one_star) EXPECT_EQ(sim.answers[q], 1);
        for (auto q : groups.zero_star) EXPECT_EQ(sim.answers[q], 0);
    }
}

TEST(UnateReduction, BudgetGate) {
    EXPECT_FALSE(unate_nonadaptive_budget_ok(256, 1));
    EXPECT_TRUE(unate_nonadaptive_budget_ok(256, 0));
    // n = 2^30: n^{3/2} / 30^8 is about 53.6
    EXPECT_TRUE(unate_nonadaptive_budget_ok(1 << 30, 53));
    EXPECT_FALSE(unate_nonadaptive_budget_ok(1 << 30, 54));
}

TEST(Lifting, PlanArithmetic) {
    auto plus5 = [](int k) { return k + 5; };
    auto p = lift_plan(10, 0.9, plus5);
    EXPECT_EQ(p.parity_vars, 15);
    EXPECT_EQ(p.total_vars, 25);
    EXPECT_EQ(p.k, 23);
    EXPECT_EQ(p.dummy_vars, 3);
    auto q = lift_plan(10, 0.5, plus5);
    EXPECT_EQ(q.parity_vars, 0);
    EXPECT_EQ(q.k, 5);
    EXPECT_EQ(q.dummy_vars, 0);
    auto exact = lift_plan(8, 0.8, [](int k) { return k + 2; }); // n' = 0.2*8/0.8 = 2
    EXPECT_EQ(exact.parity_vars, 2);
    EXPECT_EQ(exact.k, 8);
    EXPECT_THROW(lift_plan(10, 1.0, plus5), std::invalid_argument);
    EXPECT_THROW(lift_plan(10, 0.9, [](int k) { return k; }), std::invalid_argument);
}

TEST(Lifting, TesterSeesPaddedFunction) {
    auto f = TruthTable::from_index(4, [](std::uint64_t x) { return (x & 3) == 3; });
    auto input_size = [](int k) { return k + 4; };
    const auto plan = lift_plan(4, 0.8, input_size);
    bool called = false;
    lift_junta_tester(
        [&](const BoolFn& g, int k) {
            called = true;
            EXPECT_EQ(k, plan.k);
            EXPECT_EQ(g.n, input_size(k));
            auto want = pad_dummy(pad_parity(f, plan.parity_vars), plan.dummy_vars);
            EXPECT_EQ(TruthTable::of(g), want);
            return true;
        },
        input_size, 0.8, table_function(f));
    EXPECT_TRUE(called);
}
