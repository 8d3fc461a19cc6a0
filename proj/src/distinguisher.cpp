#include "rejsamp/distinguisher.hpp"
#include "rejsamp/common.hpp"
#include "rejsamp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace rejsamp {

const char* verdict_name(Verdict v) { return v == Verdict::OutputG1 ? "G1" : "G2"; }

Graph observed_graph(const Transcript& t, int n_vertices) {
    std::vector<Edge> edges;
    for (const auto& e : t.entries)
        if (e.response.kind == Response::Kind::EdgePair) edges.push_back({e.response.a, e.response.b});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(n_vertices, std::move(edges));
}

std::optional<std::vector<int>> find_odd_cycle(const Graph& g) {
    const int n = g.n_vertices();
    const auto adj = g.adjacency();
    std::vector<int> depth(n + 1, -1), parent(n + 1, 0);
    for (int s = 1; s <= n; ++s) {
        if (depth[s] != -1) continue;
        depth[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v]) {
                if (depth[w] != -1) continue;
                depth[w] = depth[v] + 1;
                parent[w] = v;
                q.push(w);
            }
        }
    }
    for (const auto& e : g.edges()) {
        if ((depth[e.u] & 1) != (depth[e.v] & 1)) continue;
        // same parity: tree paths to the common ancestor plus this edge close an odd cycle
        std::vector<int> up_u{e.u}, up_v{e.v};
        int a = e.u, b = e.v;
        while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
        while (depth[b] > depth[a]) up_v.push_back(b = parent[b]);
        while (a != b) {
            up_u.push_back(a = parent[a]);
            up_v.push_back(b = parent[b]);
        }
        up_v.pop_back(); // the ancestor appears once
        std::vector<int> cycle(up_u.begin(), up_u.end());
        cycle.insert(cycle.end(), up_v.rbegin(), up_v.rend());
        return cycle;
    }
    return std::nullopt;
}

bool is_valid_odd_cycle(const Graph& g, const std::vector<int>& cycle) {
    if (cycle.size() < 3 || cycle.size() % 2 == 0) return false;
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    return true;
}

DistinguisherRun run_odd_cycle_distinguisher(OracleSession& session, int repetitions) {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    const int n = session.graph().n_vertices();
    std::vector<int> all(n);
    for (int v = 1; v <= n; ++v) all[v - 1] = v;
    const std::uint64_t before = session.transcript().total_cost;
    const std::size_t first = session.transcript().entries.size();
    for (int r = 0; r < repetitions; ++r) session.query(all);

    Transcript mine;
    mine.entries.assign(session.transcript().entries.begin() + static_cast<std::ptrdiff_t>(first),
                        session.transcript().entries.end());
    DistinguisherRun run;
    run.cycle = find_odd_cycle(observed_graph(mine, n));
    run.verdict = run.cycle ? Verdict::OutputG1 : Verdict::OutputG2;
    run.cost = session.transcript().total_cost - before;
    return run;
}

int default_repetitions(int n) { return 8 * n * ceil_log2(static_cast<std::uint64_t>(n)); }

Algorithm odd_cycle_algorithm(int repetitions) {
    return [repetitions](OracleSession& s) { return run_odd_cycle_distinguisher(s, repetitions).verdict; };
}

std::uint64_t trial_seed(std::uint64_t master, GraphFamily family, int trial) {
    return derive_seed(derive_seed(master, family == GraphFamily::TwoCliques ? 1 : 2), static_cast<std::uint64_t>(trial));
}

std::vector<TrialRow> run_distinguisher_trials(int n, std::optional<GraphFamily> family, int repetitions, int trials,
                                               std::uint64_t master, int jobs) {
    std::vector<TrialRow> rows(trials);
    const Stream coin(derive_seed(master, 3));
    parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t t) {
        GraphFamily fam = family ? *family
                                 : ((coin.at(t) >> 63) ? GraphFamily::CompleteBipartite : GraphFamily::TwoCliques);
        std::uint64_t ts = trial_seed(master, fam, static_cast<int>(t));
        Graph g = build_graph(sample_partition(n, derive_seed(ts, 0)), fam);
        OracleSession session(g, derive_seed(ts, 1));
        auto run = run_odd_cycle_distinguisher(session, repetitions);
        rows[t] = {static_cast<int>(t), fam, run.verdict, run.cost, run.cycle.has_value()};
    });
    return rows;
}

AdvantageReport estimate_advantage(const Algorithm& alg, int n, int trials, std::uint64_t master, int jobs) {
    if (trials < 30) throw std::invalid_argument("advantage estimation needs at least 30 trials");
    std::vector<char> hit1(trials, 0), hit2(trials, 0);
    parallel_for(static_cast<std::size_t>(2 * trials), jobs, [&](std::size_t k) {
        GraphFamily fam = k < static_cast<std::size_t>(trials) ? GraphFamily::TwoCliques : GraphFamily::CompleteBipartite;
        int t = static_cast<int>(k % trials);
        std::uint64_t ts = trial_seed(master, fam, t);
        Graph g = build_graph(sample_partition(n, derive_seed(ts, 0)), fam);
        OracleSession session(g, derive_seed(ts, 1));
        bool g1 = alg(session) == Verdict::OutputG1;
        (fam == GraphFamily::TwoCliques ? hit1 : hit2)[t] = g1;
    });
    AdvantageReport r;
    r.trials = trials;
    r.g1_hits = static_cast<int>(std::count(hit1.begin(), hit1.end(), 1));
    r.g2_hits = static_cast<int>(std::count(hit2.begin(), hit2.end(), 1));
    r.p1 = static_cast<double>(r.g1_hits) / trials;
    r.p2 = static_cast<double>(r.g2_hits) / trials;
    r.advantage = r.p1 - r.p2;
    r.half_width_p1 = wilson_interval(r.g1_hits, trials).half_width();
    r.half_width_p2 = wilson_interval(r.g2_hits, trials).half_width();
    return r;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0, 1};
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double denom = 1 + z * z / nn;
    const double centre = (p + z * z / (2 * nn)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

} // namespace rejsamp
