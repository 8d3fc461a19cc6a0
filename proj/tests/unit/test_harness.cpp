#include "rejsamp/harness.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace rejsamp;

TEST(Config, ParsesKeyValueText) {
    std::istringstream in("# comment\n n = 12 \n\nfamily=g2 # trailing\nlist = 1, 2,3\n");
    auto c = Config::parse(in);
    EXPECT_EQ(c.integer("n", 0), 12);
    EXPECT_EQ(c.str("family", "g1"), "g2");
    EXPECT_EQ(c.int_list("list", {}), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(c.real("alpha", 0.25), 0.25);
    auto eff = c.effective();
    EXPECT_NE(std::find(eff.begin(), eff.end(), std::pair<std::string, std::string>{"alpha", "0.25"}), eff.end());
    EXPECT_TRUE(c.unused().empty());
    std::istringstream bad("novalue\n");
    EXPECT_THROW(Config::parse(bad), UsageError);
}

TEST(Config, TypeErrorsAreUsageErrors) {
    Config c;
    c.set("n", "12x");
    c.set("seed", "-3");
    c.set("x", "abc");
    EXPECT_THROW(c.integer("n", 0), UsageError);
    EXPECT_THROW(c.u64("seed", 0), UsageError);
    EXPECT_THROW(c.real("x", 0), UsageError);
    c.set("unused_key", "1");
    EXPECT_NE(std::find(c.unused().begin(), c.unused().end(), "unused_key"), c.unused().end());
}

TEST(Report, CsvQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Report, HeaderCarriesVersionPrngAndConfig) {
    Config c;
    c.set("n", "8");
    auto r = run_suite("chi-table", c, 1);
    std::ostringstream os;
    write_report(os, r);
    const std::string s = os.str();
    EXPECT_EQ(s.rfind("# version rejsamp 0.1.0\n# prng splitmix64-ctr-v1\n# suite chi-table\n", 0), 0u);
    EXPECT_NE(s.find("# config n=8\n"), std::string::npos);
    EXPECT_NE(s.find("n,family,chi_junta,chi_unate\n"), std::string::npos);
    EXPECT_NE(s.find("8,g1,1/2,"), std::string::npos);
    EXPECT_NE(s.find("8,g2,3/4,0/1"), std::string::npos);
    EXPECT_TRUE(r.pass());
}

TEST(Suites, Names) {
    auto names = suite_names();
    for (const char* s : {"advantage", "tv-junta", "tv-unate-adaptive", "tv-unate-nonadaptive", "distance-trend",
                          "event-frequency", "chi-table"})
        EXPECT_NE(std::find(names.begin(), names.end(), s), names.end());
    EXPECT_THROW(run_suite("nope", Config(), 1), UsageError);
}

TEST(Suites, BadTrialCounts) {
    Config c;
    c.set("trials", "0");
    EXPECT_THROW(run_suite("advantage", c, 1), UsageError);
    c.set("trials", "10");
    EXPECT_THROW(run_suite("advantage", c, 1), UsageError);
    Config t;
    t.set("runs", "100");
    EXPECT_THROW(run_suite("tv-junta", t, 1), UsageError);
}

TEST(Suites, ReportsAreByteIdentical) {
    auto render = [](const std::string& suite, Config c, int jobs) {
        std::ostringstream os;
        write_report(os, run_suite(suite, c, jobs));
        return os.str();
    };
    Config a;
    a.set("n", "16");
    a.set("trials", "40");
    a.set("reps", "64");
    EXPECT_EQ(render("advantage", a, 1), render("advantage", a, 3));
    Config t;
    t.set("runs", "10000");
    EXPECT_EQ(render("tv-junta", t, 1), render("tv-junta", t, 2));
    Config d;
    d.set("seeds", "6");
    d.set("unate_n", "");
    EXPECT_EQ(render("distance-trend", d, 1), render("distance-trend", d, 2));
}

TEST(Suites, ThresholdsComeFromConfig) {
    Config c;
    c.set("n", "16");
    c.set("trials", "40");
    c.set("reps", "1");
    EXPECT_FALSE(run_suite("advantage", c, 1).pass());
    c.set("min_advantage", "0");
    c.set("max_half_width", "1");
    EXPECT_TRUE(run_suite("advantage", c, 1).pass());
}

TEST(Helpers, Median) {
    EXPECT_EQ(median({3, 1, 2}), 2);
    EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
    EXPECT_THROW(median({}), std::invalid_argument);
}

TEST(Helpers, PerturbedBatchShape) {
    Stream rng(1);
    auto b = perturbed_batch(20, 3, 4, 2, rng);
    ASSERT_EQ(b.size(), 15u);
    for (int base = 0; base < 3; ++base)
        for (int c = 1; c <= 4; ++c) {
            int diff = 0;
            for (int j = 0; j < 20; ++j) diff += b[base * 5][j] != b[base * 5 + c][j];
            EXPECT_EQ(diff, 2);
        }
}

TEST(Helpers, RandomQueryTranscriptSpendsBudget) {
    Graph g = build_graph(sample_partition(32, 1), GraphFamily::TwoCliques);
    auto t = random_query_transcript(g, 101, 10, 4);
    EXPECT_EQ(t.total_cost, 101u);
    EXPECT_EQ(t.entries.size(), 11u);
    EXPECT_EQ(t.entries.back().query.size(), 1u);
    EXPECT_THROW(random_query_transcript(g, 5, 0, 4), std::invalid_argument);
}

TEST(Fixtures, JuntaBatchHasBothHalvesAndSharedGroups) {
    auto fx = junta_tv_fixture();
    auto groups = group_queries_junta(fx.batch, fx.M);
    int first = 0, second = 0, multi = 0;
    for (const auto& g : groups) {
        (g.first_half ? first : second)++;
        multi += g.members.size() > 1;
    }
    EXPECT_GE(first, 1);
    EXPECT_GE(second, 1);
    EXPECT_GE(multi, 2);
}
