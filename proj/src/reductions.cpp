#include "rejsamp/reductions.hpp"
#include "rejsamp/junta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace rejsamp {

VertexMap::VertexMap(int n_vars, const std::vector<int>& M) : vertex_(n_vars + 1, 0) {
    std::vector<char> in(n_vars + 1, 0);
    for (int v : M) in.at(v) = 1;
    for (int v = 1; v <= n_vars; ++v)
        if (!in[v]) {
            Mbar_.push_back(v);
            vertex_[v] = static_cast<int>(Mbar_.size());
        }
}

namespace {

int batch_vars(const QueryBatch& batch) {
    if (batch.empty()) return 0;
    const auto len = batch[0].size();
    for (const auto& z : batch)
        if (z.size() != len) throw std::invalid_argument("queries in a batch must have equal length");
    return static_cast<int>(len);
}

void check_sizes(int n_vars, const OracleSession& session, std::size_t m_size) {
    const int n = session.graph().n_vertices();
    if (n_vars != 2 * n) throw std::invalid_argument("queries must have 2n variables for a graph on n vertices");
    if (static_cast<int>(m_size) != n) throw std::invalid_argument("|M| must equal n");
}

std::vector<int> disagreement(const QueryBatch& batch, const std::vector<std::size_t>& members,
                              const std::vector<int>& Mbar) {
    std::vector<int> L;
    const BitVec& z0 = batch[members[0]];
    for (int j : Mbar)
        for (std::size_t k = 1; k < members.size(); ++k)
            if (batch[members[k]][j - 1] != z0[j - 1]) {
                L.push_back(j);
                break;
            }
    return L;
}

std::vector<int> to_vertices(const VertexMap& vm, const std::vector<int>& vars) {
    std::vector<int> out;
    out.reserve(vars.size());
    for (int j : vars) out.push_back(vm.to_vertex(j));
    return out;
}

} // namespace

std::vector<JuntaGroup> group_queries_junta(const QueryBatch& batch, const std::vector<int>& M) {
    const int n_vars = batch_vars(batch);
    std::vector<int> Ms = M;
    std::sort(Ms.begin(), Ms.end());
    if (!batch.empty() && 2 * Ms.size() != static_cast<std::size_t>(n_vars))
        throw std::invalid_argument("|M| must be half the number of variables");
    VertexMap vm(n_vars, Ms);
    std::map<std::vector<std::uint8_t>, std::size_t> where;
    std::vector<JuntaGroup> groups;
    for (std::size_t q = 0; q < batch.size(); ++q) {
        std::vector<std::uint8_t> key;
        key.reserve(Ms.size());
        for (int j : Ms) key.push_back(batch[q][j - 1]);
        auto [it, fresh] = where.emplace(key, groups.size());
        if (fresh) {
            JuntaGroup g;
            g.first_half = Ms.empty() || key[0] == 0;
            groups.push_back(std::move(g));
        }
        groups[it->second].members.push_back(q);
    }
    for (auto& g : groups) g.L = disagreement(batch, g.members, vm.Mbar());
    return groups;
}

SimulatedAnswers simulate_junta_answers(const std::vector<JuntaGroup>& groups, const QueryBatch& batch,
                                        OracleSession& session, const std::vector<int>& M, std::uint64_t seed) {
    const int n_vars = batch_vars(batch);
    check_sizes(n_vars, session, M.size());
    VertexMap vm(n_vars, M);
    Stream rng(seed);
    SimulatedAnswers r(batch.size(), 0);
    for (const auto& g : groups) {
        if (g.first_half) {
            for (auto q : g.members) {
                std::uint8_t p = 0;
                for (int j : M) p ^= batch[q][j - 1];
                r[q] = p;
            }
            continue;
        }
        const Response v = session.query(to_vertices(vm, g.L));
        const std::uint8_t anchor = rng.bit();
        for (auto q : g.members) {
            const BitVec& z = batch[q];
            switch (v.kind) {
            case Response::Kind::Empty: r[q] = anchor; break;
            case Response::Kind::Lone: r[q] = anchor ^ z[vm.to_var(v.a) - 1]; break;
            case Response::Kind::EdgePair: r[q] = anchor ^ z[vm.to_var(v.a) - 1] ^ z[vm.to_var(v.b) - 1]; break;
            }
        }
    }
    return r;
}

ReductionOutcome run_junta_reduction(const BatchDecision& tester, const QueryBatch& batch, OracleSession& session,
                                     std::uint64_t seed, std::optional<std::vector<int>> M) {
    const int n = session.graph().n_vertices();
    if (!M) {
        Stream rng(derive_seed(seed, 0));
        M = sample_subset(rng, 2 * n, n);
    }
    std::sort(M->begin(), M->end());
    const std::uint64_t before = session.transcript().total_cost;
    auto groups = group_queries_junta(batch, *M);
    ReductionOutcome out;
    out.answers = simulate_junta_answers(groups, batch, session, *M, derive_seed(seed, 1));
    out.cost = session.transcript().total_cost - before;
    out.verdict = tester(out.answers) ? Verdict::OutputG1 : Verdict::OutputG2;
    return out;
}

UnateSetup sample_unate_setup(int n_vars, std::uint64_t seed) {
    if (n_vars <= 0 || n_vars % 4 != 0) throw std::invalid_argument("unate functions need a multiple of 4 variables");
    Stream rng(derive_seed(seed, 0));
    auto sk = sample_unate_skeleton(n_vars, rng);
    std::vector<int> core;
    for (int v : sk.M)
        if (v != sk.m1 && v != sk.m2) core.push_back(v);
    const int s = isqrt_ceil(static_cast<std::uint64_t>(n_vars));
    if (s > 62) throw CapacityError("2^ceil(sqrt n) terms do not fit 64-bit indices");
    UnateSetup setup{std::move(sk.M), sk.m1, sk.m2, nullptr};
    setup.terms = std::make_shared<TermSet>(std::move(core), s, std::uint64_t{1} << s, derive_seed(seed, 2));
    return setup;
}

namespace {

// floor(3N/4) without overflow
std::uint64_t three_quarters(std::uint64_t N) { return N - (N + 3) / 4; }

int weight_on(const BitVec& z, const std::vector<int>& M) {
    int w = 0;
    for (int j : M) w += z[j - 1];
    return w;
}

} // namespace

ReductionOutcome run_unate_adaptive_reduction(const AdaptiveTester& tester, int q, OracleSession& session,
                                              std::uint64_t seed, std::optional<UnateSetup> setup) {
    const int n = session.graph().n_vertices();
    const int n_vars = 2 * n;
    if (q < 0) throw std::invalid_argument("q must be nonnegative");
    if (!setup) setup = sample_unate_setup(n_vars, seed);
    check_sizes(n_vars, session, setup->M.size());
    VertexMap vm(n_vars, setup->M);
    const UnateBand band = unate_band(n_vars);
    const std::uint64_t N = setup->terms->count();

    const std::uint64_t before = session.transcript().total_cost;
    std::vector<int> all(n);
    for (int v = 1; v <= n; ++v) all[v - 1] = v;
    std::vector<Response> edges;
    for (int t = 0; t < q; ++t) edges.push_back(session.query(all));
    Stream rng(derive_seed(seed, 1));
    std::vector<std::uint8_t> j_coin(q), j3_coin(q); // 1 selects m2
    for (int t = 0; t < q; ++t) {
        j_coin[t] = rng.bit();
        j3_coin[t] = rng.bit();
    }

    std::unordered_map<std::uint64_t, int> p1, p2;
    int asked = 0;
    ReductionOutcome out;
    AskFn ask = [&](const BitVec& z) -> std::uint8_t {
        if (static_cast<int>(z.size()) != n_vars) throw std::invalid_argument("query length must be 2n");
        if (++asked > q) throw std::logic_error("tester asked more than q queries");
        std::uint8_t a;
        const int w = weight_on(z, setup->M);
        const TermHit h = w > band.hi || w < band.lo ? TermHit{} : setup->terms->classify(z);
        if (w > band.hi)
            a = 1;
        else if (w < band.lo)
            a = 0;
        else if (h.kind != TermHit::Kind::Unique)
            a = h.kind == TermHit::Kind::OneStar;
        else if (h.index <= three_quarters(N)) {
            auto [it, fresh] = p1.emplace(h.index, static_cast<int>(p1.size()));
            const int t = it->second;
            a = j_coin[t] ? z[setup->m2 - 1] ^ 1 : z[setup->m1 - 1];
        } else {
            auto [it, fresh] = p2.emplace(h.index, static_cast<int>(p2.size()));
            const int t = it->second;
            const Response& e = edges[t];
            const int j1 = vm.to_var(e.a), j2 = vm.to_var(e.b);
            const int j3 = j3_coin[t] ? setup->m2 : setup->m1;
            a = z[j1 - 1] ^ z[j2 - 1] ^ z[j3 - 1] ^ j3_coin[t];
        }
        out.answers.push_back(a);
        return a;
    };
    const bool accept = tester(ask);
    out.cost = session.transcript().total_cost - before;
    out.verdict = accept ? Verdict::OutputG2 : Verdict::OutputG1;
    return out;
}

UnateGroups group_queries_unate(const QueryBatch& batch, const UnateSetup& setup) {
    const int n_vars = batch_vars(batch);
    UnateGroups g;
    if (batch.empty()) return g;
    if (2 * setup.M.size() != static_cast<std::size_t>(n_vars))
        throw std::invalid_argument("|M| must be half the number of variables");
    VertexMap vm(n_vars, setup.M);
    const UnateBand band = unate_band(n_vars);
    std::vector<std::size_t> in_band;
    for (std::size_t q = 0; q < batch.size(); ++q) {
        const int w = weight_on(batch[q], setup.M);
        if (w < band.lo)
            g.below.push_back(q);
        else if (w > band.hi)
            g.above.push_back(q);
        else
            in_band.push_back(q);
    }
    QueryBatch xs;
    for (auto q : in_band) xs.push_back(batch[q]);
    const auto hits = setup.terms->classify(xs);
    std::map<std::uint64_t, std::size_t> where;
    for (std::size_t k = 0; k < in_band.size(); ++k) {
        const std::size_t q = in_band[k];
        if (hits[k].kind == TermHit::Kind::ZeroStar) {
            g.zero_star.push_back(q);
        } else if (hits[k].kind == TermHit::Kind::OneStar) {
            g.one_star.push_back(q);
        } else {
            auto [it, fresh] = where.emplace(hits[k].index, g.indexed.size());
            if (fresh) g.indexed.push_back({hits[k].index, {}, {}, {}, {}, 0});
            g.indexed[it->second].members.push_back(q);
        }
    }
    for (auto& grp : g.indexed) {
        grp.L = disagreement(batch, grp.members, vm.Mbar());
        grp.rep = *std::min_element(grp.members.begin(), grp.members.end(),
                                    [&](std::size_t a, std::size_t b) { return batch[a] < batch[b]; });
        const BitVec& z = batch[grp.rep];
        for (int j : vm.Mbar()) {
            if (std::binary_search(grp.L.begin(), grp.L.end(), j)) continue;
            (z[j - 1] ? grp.Lbar1 : grp.Lbar0).push_back(j);
        }
    }
    return g;
}

UnateSimulation simulate_unate_answers(const UnateGroups& groups, const QueryBatch& batch, const UnateSetup& setup,
                                       OracleSession& session, std::uint64_t seed) {
    const int n_vars = batch_vars(batch);
    const int n = session.graph().n_vertices();
    check_sizes(n_vars, session, setup.M.size());
    VertexMap vm(n_vars, setup.M);
    const int logn = ceil_log2(static_cast<std::uint64_t>(n));
    const std::uint64_t N = setup.terms->count();
    const std::uint64_t before = session.transcript().total_cost;
    Stream rng(seed);
    UnateSimulation sim;
    auto& r = sim.answers;
    r.assign(batch.size(), 0);
    for (auto q : groups.above) r[q] = 1;
    for (auto q : groups.one_star) r[q] = 1;

    std::vector<int> everyone(n);
    for (int v = 1; v <= n; ++v) everyone[v - 1] = v;
    for (const auto& grp : groups.indexed) {
        if (grp.index <= three_quarters(N)) {
            const bool to_m2 = rng.bit();
            for (auto q : grp.members) r[q] = to_m2 ? batch[q][setup.m2 - 1] ^ 1 : batch[q][setup.m1 - 1];
            continue;
        }
        const bool small = static_cast<std::uint64_t>(grp.L.size()) * logn <= static_cast<std::uint64_t>(n);
        const Response v = session.query(small ? to_vertices(vm, grp.L) : everyone);
        const std::uint8_t neg = rng.bit(); // j3 = m2 negates
        const int j3 = neg ? setup.m2 : setup.m1;
        const std::uint64_t lbar = grp.Lbar0.size() + grp.Lbar1.size();
        if (v.kind == Response::Kind::EdgePair) {
            const int j1 = vm.to_var(v.a), j2 = vm.to_var(v.b);
            for (auto q : grp.members) r[q] = batch[q][j1 - 1] ^ batch[q][j2 - 1] ^ batch[q][j3 - 1] ^ neg;
        } else if (v.kind == Response::Kind::Lone) {
            if (lbar == 0) throw std::domain_error("degenerate group: no coordinates outside L");
            const int j2 = vm.to_var(v.a);
            const BitVec& z1 = batch[grp.rep];
            const std::uint8_t w = z1[j2 - 1] ^ 1;
            const std::uint8_t b = rng.bernoulli((w ? grp.Lbar1 : grp.Lbar0).size(), lbar);
            const std::uint8_t target = b ^ z1[j2 - 1] ^ neg;
            for (auto q : grp.members) r[q] = target ^ batch[q][j2 - 1] ^ batch[q][j3 - 1];
        } else {
            if (lbar == 0) throw std::domain_error("degenerate group: no coordinates outside L");
            const std::uint64_t a0 = grp.Lbar0.size(), a1 = grp.Lbar1.size();
            const std::uint8_t b = rng.bernoulli(2 * a0 * a1, lbar * lbar);
            for (auto q : grp.members) r[q] = b ^ neg ^ batch[q][j3 - 1];
        }
    }
    sim.cost = session.transcript().total_cost - before;
    return sim;
}

ReductionOutcome run_unate_nonadaptive_reduction(const BatchDecision& tester, const QueryBatch& batch,
                                                 OracleSession& session, std::uint64_t seed,
                                                 std::optional<UnateSetup> setup) {
    const int n = session.graph().n_vertices();
    if (!setup) setup = sample_unate_setup(2 * n, seed);
    auto groups = group_queries_unate(batch, *setup);
    auto sim = simulate_unate_answers(groups, batch, *setup, session, derive_seed(seed, 1));
    ReductionOutcome out;
    out.answers = std::move(sim.answers);
    out.cost = sim.cost;
    out.verdict = tester(out.answers) ? Verdict::OutputG2 : Verdict::OutputG1;
    return out;
}

bool unate_nonadaptive_budget_ok(int n, std::size_t q) {
    const double lg = ceil_log2(static_cast<std::uint64_t>(n));
    return static_cast<double>(q) * std::pow(lg, 8) <= std::pow(static_cast<double>(n), 1.5);
}

LiftPlan lift_plan(int n, double alpha, const std::function<int(int)>& input_size) {
    if (!(alpha < 1)) throw std::invalid_argument("lifting needs alpha < 1");
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    LiftPlan p;
    const double extra = std::max((4 * alpha - 3) * n / (4 * (1 - alpha)), 0.0);
    p.parity_vars = static_cast<int>(std::ceil(extra - 1e-9));
    p.total_vars = n + p.parity_vars;
    p.k = static_cast<int>(std::ceil(alpha * p.total_vars - 1e-9));
    const int want = input_size ? input_size(p.k) : p.total_vars;
    if (want < p.total_vars) throw std::invalid_argument("tester input size is smaller than the padded function");
    p.dummy_vars = want - p.total_vars;
    return p;
}

bool lift_junta_tester(const JuntaTester& tester, const std::function<int(int)>& input_size, double alpha,
                       const BoolFn& f) {
    const LiftPlan p = lift_plan(f.n, alpha, input_size);
    return tester(pad_dummy(pad_parity(f, p.parity_vars), p.dummy_vars), p.k);
}

} // namespace rejsamp
