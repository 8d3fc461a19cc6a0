// Acceptance gate: one PASS/FAIL line per criterion.
#include "rejsamp/analytics.hpp"
#include "rejsamp/distance.hpp"
#include "rejsamp/distinguisher.hpp"
#include "rejsamp/harness.hpp"
#include "rejsamp/junta.hpp"
#include "rejsamp/parallel.hpp"
#include "rejsamp/reductions.hpp"
#include "rejsamp/unate.hpp"
#include "oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rejsamp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_s; // wall-clock limit
    std::function<Outcome(int jobs)> run;
};

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Outcome c1_chi(int) {
    int mismatches = 0, off = 0;
    std::string bad;
    for (int nv = 4; nv <= 24; nv += 2) {
        for (GraphFamily fam : {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite}) {
            const Graph g = build_graph(sample_partition(nv, derive_seed(1, nv)), fam);
            const Fraction fast = chi_junta(g, nv / 2);
            const Fraction brute = chi_junta_bruteforce(g, nv / 2);
            const Fraction want = fam == GraphFamily::TwoCliques ? Fraction(1, 2) : Fraction(3, 4);
            if (fast != brute) ++mismatches;
            if (brute != want) {
                ++off;
                bad += " " + family_name(fam) + "@" + std::to_string(nv) + "=" + brute.str();
            }
        }
    }
    return {mismatches == 0 && off == 0, "fast/brute mismatches " + std::to_string(mismatches) +
                                             ", values off target " + std::to_string(off) + (bad.empty() ? "" : ":" + bad)};
}

Outcome c2_one_sided(int jobs) {
    const int n = 64;
    auto rows = run_distinguisher_trials(n, GraphFamily::CompleteBipartite, default_repetitions(n), 1000, 2, jobs);
    int g1 = 0;
    for (const auto& r : rows) g1 += r.verdict == Verdict::OutputG1;
    return {g1 == 0, std::to_string(g1) + " OutputG1 verdicts in 1000 trials on g2"};
}

Outcome c3_advantage(int jobs) {
    auto rep = estimate_advantage(odd_cycle_algorithm(default_repetitions(64)), 64, 500, 3, jobs);
    const double hw = std::max(rep.half_width_p1, rep.half_width_p2);
    return {rep.advantage >= 0.9 && hw <= 0.05,
            "p1=" + num(rep.p1) + " p2=" + num(rep.p2) + " advantage=" + num(rep.advantage) + " (>= 0.9), half-width " +
                num(hw) + " (<= 0.05)"};
}

Outcome c4_oracles(int) {
    int bad3 = 0, bad4 = 0;
    for (std::uint64_t w = 0; w < 256; ++w) {
        auto f = TruthTable::from_index(3, [&](std::uint64_t x) { return w >> x & 1; });
        bad3 += dist_to_monotone_exact(f) != oracle::monotone_distance(f);
    }
    Stream rng(4);
    for (int i = 0; i < 1000; ++i) {
        auto f = TruthTable::from_index(4, [&](std::uint64_t) { return rng.bit(); });
        bad4 += dist_to_monotone_exact(f) != oracle::monotone_distance(f);
    }
    auto x1x2 = TruthTable::from_index(2, [](std::uint64_t x) { return (x ^ x >> 1) & 1; });
    const Fraction u = dist_to_unate_exact(x1x2);
    return {bad3 == 0 && bad4 == 0 && u == Fraction(1, 4), "n=3 mismatches " + std::to_string(bad3) +
                                                               "/256, n=4 mismatches " + std::to_string(bad4) +
                                                               "/1000, dist_to_unate(x1^x2)=" + u.str()};
}

Outcome c5_witness(int) {
    int bad = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const GraphFamily fam = s % 2 ? GraphFamily::CompleteBipartite : GraphFamily::TwoCliques;
        auto f = JuntaInstance::sample(8, fam, derive_seed(5, s));
        Stream rng(derive_seed(6, s));
        auto S = sample_subset_of(rng, f.Mbar(), 2);
        const Fraction d = dist_between(f.table(), witness_junta_table(f, S));
        const Fraction want(witness_hits(f, S), 2ull << f.m());
        bad += d != want;
    }
    return {bad == 0, std::to_string(bad) + "/50 seeds violate the identity"};
}

std::string checks_of(const Report& r) {
    std::string s;
    for (const auto& c : r.checks) s += (s.empty() ? "" : "; ") + c.name + " " + (c.pass ? "ok" : "FAIL") + " " + c.detail;
    return s;
}

Outcome c6_trend(int jobs) {
    Config cfg;
    cfg.set("seeds", "50");
    Report r = run_suite("distance-trend", cfg, jobs);
    return {r.pass(), checks_of(r)};
}

Outcome c7_tv(int jobs) {
    bool pass = true;
    std::string detail;
    for (const char* s : {"tv-junta", "tv-unate-adaptive", "tv-unate-nonadaptive"}) {
        Config cfg;
        cfg.set("runs", "100000");
        Report r = run_suite(s, cfg, jobs);
        pass = pass && r.pass();
        detail += (detail.empty() ? "" : " | ") + std::string(s) + ": " + checks_of(r);
    }
    return {pass, detail};
}

Outcome c8_costs(int jobs) {
    // adaptive unate: q queries of [n] up front
    int adaptive_bad = 0;
    for (int n : {8, 16, 32})
        for (int q : {1, 4, 16}) {
            Graph g = build_graph(sample_partition(n, derive_seed(8, n)), GraphFamily::TwoCliques);
            OracleSession session(g, derive_seed(9, q));
            AdaptiveTester tester = [&](const AskFn& ask) {
                Stream rng(derive_seed(10, q));
                for (int i = 0; i < q; ++i) {
                    BitVec z(2 * n);
                    for (auto& b : z) b = rng.bit();
                    ask(z);
                }
                return true;
            };
            auto out = run_unate_adaptive_reduction(tester, q, session, derive_seed(11, n * 100 + q));
            adaptive_bad += out.cost != static_cast<std::uint64_t>(q) * n;
        }

    // junta: perturbed batches so groups share a projection onto M
    const int seeds = 200;
    const auto accept = [](const SimulatedAnswers&) { return true; };
    std::vector<std::uint64_t> jcost(seeds);
    const int jn = 64, jq = 60;
    parallel_for(seeds, jobs, [&](std::size_t s) {
        const std::uint64_t ss = derive_seed(12, s);
        Graph g = build_graph(sample_partition(jn, derive_seed(ss, 0)), GraphFamily::TwoCliques);
        OracleSession session(g, derive_seed(ss, 1));
        Stream rng(derive_seed(ss, 2));
        auto batch = perturbed_batch(2 * jn, 10, 5, 3, rng);
        jcost[s] = run_junta_reduction(accept, batch, session, derive_seed(ss, 3)).cost;
    });
    const double jbound = 100.0 * jq * ceil_log2(jn);
    int jok = 0;
    for (auto c : jcost) jok += c <= jbound;

    // unate non-adaptive at n = 256
    const int un = 256, uq = 50;
    std::vector<std::uint64_t> ucost(seeds);
    parallel_for(seeds, jobs, [&](std::size_t s) {
        const std::uint64_t ss = derive_seed(13, s);
        Graph g = build_graph(sample_partition(un, derive_seed(ss, 0)), GraphFamily::CompleteBipartite);
        OracleSession session(g, derive_seed(ss, 1));
        Stream rng(derive_seed(ss, 2));
        auto batch = perturbed_batch(2 * un, 10, 4, 2, rng);
        ucost[s] = run_unate_nonadaptive_reduction(accept, batch, session, derive_seed(ss, 3)).cost;
    });
    const double ubound = uq * std::sqrt(static_cast<double>(un)) * ceil_log2(un);
    int uok = 0;
    std::uint64_t umax = 0, jmax = 0;
    for (auto c : ucost) {
        uok += c <= ubound;
        umax = std::max(umax, c);
    }
    for (auto c : jcost) jmax = std::max(jmax, c);
    const bool pass = adaptive_bad == 0 && jok >= 0.99 * seeds && uok >= 0.95 * seeds;
    return {pass, "adaptive mismatches " + std::to_string(adaptive_bad) + "/9; junta within " + num(jbound) + ": " +
                      std::to_string(jok) + "/" + std::to_string(seeds) + " (max " + std::to_string(jmax) +
                      "); unate within " + num(ubound) + ": " + std::to_string(uok) + "/" + std::to_string(seeds) +
                      " (max " + std::to_string(umax) + ")"};
}

Outcome c9_events(int jobs) {
    Config cfg;
    cfg.set("n", "1024");
    cfg.set("trials", "200");
    Report r = run_suite("event-frequency", cfg, jobs);
    std::string budget;
    for (const auto& [k, v] : r.summary)
        if (k == "budget") budget = v;
    return {r.pass(), "budget " + budget + "; " + checks_of(r)};
}

Outcome c10_padding(int) {
    std::uint64_t checked = 0, bad = 0;
    for (int n = 1; n <= 4; ++n) {
        const std::uint64_t count = std::uint64_t{1} << (1u << n);
        for (std::uint64_t w = 0; w < count; ++w) {
            auto f = TruthTable::from_index(n, [&](std::uint64_t x) { return w >> x & 1; });
            for (int k = 0; k <= n; ++k) {
                const Fraction d = dist_to_kjunta_exact(f, k);
                if (!(d < Fraction(1, 2))) continue;
                ++checked;
                for (int extra : {1, 2}) {
                    bad += dist_to_kjunta_exact(pad_parity(f, extra), k + extra) != d;
                    bad += dist_to_kjunta_exact(pad_dummy(f, extra), k) != d;
                }
            }
        }
    }
    return {bad == 0, std::to_string(bad) + " violations over " + std::to_string(checked) + " (f, k) pairs"};
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "chi exactness", 10, c1_chi},
        {2, "distinguisher one-sidedness", 30, c2_one_sided},
        {3, "distinguisher advantage", 300, c3_advantage},
        {4, "exact-distance oracle soundness", 120, c4_oracles},
        {5, "junta witness identity", 60, c5_witness},
        {6, "distance trend", 600, c6_trend},
        {7, "reduction fidelity", 900, c7_tv},
        {8, "cost laws", 300, c8_costs},
        {9, "event frequencies", 600, c9_events},
        {10, "padding exactness", 300, c10_padding},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance gate"};
    int only = 0, jobs = default_jobs();
    app.add_option("--criterion", only, "run a single criterion (1-10)");
    app.add_option("--jobs", jobs);
    CLI11_PARSE(app, argc, argv);

    bool all_pass = true;
    bool ran = false;
    for (const auto& c : criteria()) {
        if (only && c.id != only) continue;
        ran = true;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(jobs);
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_s;
        const bool pass = o.pass && in_time;
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS" : "FAIL") << " C" << c.id << " " << c.name << ": " << o.detail << " [" << num(secs)
                  << " s, limit " << c.limit_s << " s" << (in_time ? "" : ", over time") << "]" << std::endl;
    }
    if (!ran) {
        std::cerr << "no criterion " << only << '\n';
        return 2;
    }
    return all_pass ? 0 : 1;
}
