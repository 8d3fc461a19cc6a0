#include "rejsamp/harness.hpp"
#include "rejsamp/analytics.hpp"
#include "rejsamp/distinguisher.hpp"
#include "rejsamp/junta.hpp"
#include "rejsamp/parallel.hpp"
#include "rejsamp/unate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace rejsamp {

// ---------------------------------------------------------------- config

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

// shortest decimal that reads back as the same double
std::string exact(double v) {
    for (int p = 6; p < 17; ++p) {
        std::string s = fmt(v, p);
        if (std::stod(s) == v) return s;
    }
    return fmt(v, 17);
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

} // namespace

Config Config::parse(std::istream& is) {
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        c.values_[key] = trim(line.substr(eq + 1));
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    return parse(in);
}

std::string Config::raw(const std::string& key, const std::string& dflt) const {
    auto it = values_.find(key);
    std::string v = it == values_.end() ? dflt : it->second;
    used_[key] = v;
    return v;
}

std::string Config::str(const std::string& key, const std::string& dflt) const { return raw(key, dflt); }

std::int64_t Config::integer(const std::string& key, std::int64_t dflt) const {
    std::string v = raw(key, std::to_string(dflt));
    try {
        std::size_t pos;
        auto x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "' expects an integer, got '" + v + "'");
    }
}

std::uint64_t Config::u64(const std::string& key, std::uint64_t dflt) const {
    std::string v = raw(key, std::to_string(dflt));
    try {
        std::size_t pos;
        auto x = std::stoull(v, &pos, 0);
        if (pos != v.size() || (!v.empty() && v[0] == '-')) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "' expects an unsigned integer, got '" + v + "'");
    }
}

double Config::real(const std::string& key, double dflt) const {
    std::string v = raw(key, exact(dflt));
    try {
        std::size_t pos;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "' expects a number, got '" + v + "'");
    }
}

std::vector<int> Config::int_list(const std::string& key, const std::vector<int>& dflt) const {
    std::string v = raw(key, join(dflt));
    for (char& ch : v)
        if (ch == ',') ch = ' ';
    std::istringstream is(v);
    std::vector<int> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t pos;
            out.push_back(std::stoi(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("config key '" + key + "' expects a list of integers, got '" + v + "'");
        }
    }
    used_[key] = join(out);
    return out;
}

std::vector<std::pair<std::string, std::string>> Config::effective() const {
    return {used_.begin(), used_.end()};
}

std::vector<std::string> Config::unused() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!used_.count(k)) out.push_back(k);
    return out;
}

// ---------------------------------------------------------------- reports

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_report(std::ostream& os, const Report& r) {
    os << "# version " << kArtifactVersion << "\n# prng " << kPrngId << "\n# suite " << r.suite << '\n';
    for (const auto& [k, v] : r.config) os << "# config " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << csv_field(r.columns[i]);
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << '\n';
    }
    for (const auto& [k, v] : r.summary) os << "# summary " << k << '=' << v << '\n';
    for (const auto& c : r.checks)
        os << "# check " << c.name << ' ' << (c.pass ? "PASS" : "FAIL") << (c.detail.empty() ? "" : " " + c.detail)
           << '\n';
}

// ---------------------------------------------------------------- shared pieces

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of an empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : (v[h - 1] + v[h]) / 2;
}

QueryBatch perturbed_batch(int n_vars, int bases, int copies, int flips, Stream& rng) {
    QueryBatch batch;
    for (int b = 0; b < bases; ++b) {
        BitVec z(n_vars);
        for (auto& bit : z) bit = rng.bit();
        batch.push_back(z);
        for (int c = 0; c < copies; ++c) {
            BitVec y = z;
            for (int v : sample_subset(rng, n_vars, std::min(flips, n_vars))) y[v - 1] ^= 1;
            batch.push_back(std::move(y));
        }
    }
    return batch;
}

Transcript random_query_transcript(const Graph& g, std::uint64_t budget, int query_size, std::uint64_t seed) {
    if (query_size < 1) throw std::invalid_argument("query size must be positive");
    OracleSession session(g, derive_seed(seed, 0));
    Stream rng(derive_seed(seed, 1));
    std::uint64_t left = budget;
    while (left > 0) {
        const int k = static_cast<int>(std::min<std::uint64_t>(left, static_cast<std::uint64_t>(query_size)));
        session.query(sample_subset(rng, g.n_vertices(), std::min(k, g.n_vertices())));
        left -= static_cast<std::uint64_t>(std::min(k, g.n_vertices()));
    }
    return session.transcript();
}

namespace {

std::uint32_t pack(const SimulatedAnswers& a) {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < a.size(); ++i) code |= static_cast<std::uint32_t>(a[i] & 1) << i;
    return code;
}

Graph graph_on_mbar(int n_vars, const std::vector<int>& M, const std::vector<int>& A, GraphFamily family) {
    VertexMap vm(n_vars, M);
    std::vector<int> local;
    for (int a : A) {
        int v = vm.to_vertex(a);
        if (v == 0) throw std::invalid_argument("A must avoid M");
        local.push_back(v);
    }
    return build_graph(Partition(static_cast<int>(vm.Mbar().size()), local), family);
}

FamilyTv finish_tv(GraphFamily family, const std::vector<std::uint32_t>& direct,
                   const std::vector<std::uint32_t>& simulated, int q_bits, std::uint64_t master) {
    return {family, tv_from_samples(direct, simulated, q_bits, derive_seed(master, 99))};
}

std::uint64_t family_key(std::uint64_t master, int suite, GraphFamily f) {
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(suite)), f == GraphFamily::TwoCliques ? 1 : 2);
}

} // namespace

JuntaTvFixture junta_tv_fixture() {
    JuntaTvFixture fx;
    fx.M = {1, 3, 4, 7, 9, 12, 13, 16};
    fx.A = {2, 6, 10, 15}; // Mbar = {2,5,6,8,10,11,14,15}
    // M-part patterns: group X has min(M) = 1 (second half), group Y has min(M) = 0 (first half)
    const std::string x = "1011001110001101";
    auto flip = [](std::string s, std::initializer_list<int> vars) {
        for (int v : vars) s[v - 1] = s[v - 1] == '0' ? '1' : '0';
        return s;
    };
    const std::string y = flip(x, {1, 9});
    const std::string w = flip(x, {4});
    fx.batch = {bits_from_string(x),
                bits_from_string(flip(x, {2, 5})),
                bits_from_string(flip(x, {6})),
                bits_from_string(w),
                bits_from_string(y),
                bits_from_string(flip(y, {11, 14}))};
    return fx;
}

FamilyTv tv_junta(GraphFamily family, std::uint64_t runs, std::uint64_t master, int jobs) {
    const auto fx = junta_tv_fixture();
    const int n_vars = 16;
    const Graph g = graph_on_mbar(n_vars, fx.M, fx.A, family);
    const auto groups = group_queries_junta(fx.batch, fx.M);
    std::vector<std::uint32_t> direct(runs), simulated(runs);
    const std::uint64_t key = family_key(master, 10, family);
    parallel_for(runs, jobs, [&](std::size_t r) {
        const std::uint64_t rs = derive_seed(key, r);
        JuntaInstance f(n_vars, fx.M, fx.A, family, derive_seed(rs, 0));
        SimulatedAnswers a;
        for (const auto& z : fx.batch) a.push_back(f.eval(z));
        direct[r] = pack(a);
        OracleSession session(g, derive_seed(rs, 1));
        simulated[r] = pack(simulate_junta_answers(groups, fx.batch, session, fx.M, derive_seed(rs, 2)));
    });
    return finish_tv(family, direct, simulated, static_cast<int>(fx.batch.size()), master);
}

AdaptiveTester fixed_adaptive_tester() {
    return [](const AskFn& ask) {
        const BitVec p1 = bits_from_string("1011001110001101");
        const BitVec p2 = bits_from_string("0110110001011011");
        auto flipped = [](BitVec z, std::initializer_list<int> vars) {
            for (int v : vars) z[v - 1] ^= 1;
            return z;
        };
        const std::uint8_t a1 = ask(p1);
        const BitVec z2 = a1 ? flipped(p1, {2, 5}) : flipped(p1, {9, 14});
        const std::uint8_t a2 = ask(z2);
        const BitVec z3 = flipped(z2, {a2 ? 7 : 11});
        const std::uint8_t a3 = ask(z3);
        const std::uint8_t a4 = ask(a1 ^ a2 ? p2 : flipped(p2, {1, 16}));
        return a1 + a2 + a3 + a4 >= 2;
    };
}

FamilyTv tv_unate_adaptive(GraphFamily family, std::uint64_t runs, std::uint64_t master, int jobs) {
    const int n_vars = 16, n = 8, q = 4;
    const auto tester = fixed_adaptive_tester();
    std::vector<std::uint32_t> direct(runs), simulated(runs);
    const std::uint64_t key = family_key(master, 11, family);
    parallel_for(runs, jobs, [&](std::size_t r) {
        const std::uint64_t rs = derive_seed(key, r);
        const UnateSetup setup = sample_unate_setup(n_vars, derive_seed(rs, 0));
        VertexMap vm(n_vars, setup.M);
        Stream arng(derive_seed(rs, 1));
        UnateInstance f(n_vars, setup.M, setup.m1, setup.m2, sample_subset_of(arng, vm.Mbar(), n / 2), family,
                        derive_seed(rs, 2), setup.terms);
        SimulatedAnswers a;
        tester([&](const BitVec& z) {
            a.push_back(f.eval(z));
            return a.back();
        });
        direct[r] = pack(a);
        const Graph g = build_graph(sample_partition(n, derive_seed(rs, 3)), family);
        OracleSession session(g, derive_seed(rs, 4));
        simulated[r] = pack(run_unate_adaptive_reduction(tester, q, session, derive_seed(rs, 5), setup).answers);
    });
    return finish_tv(family, direct, simulated, q, master);
}

QueryBatch unate_tv_batch() {
    const std::string p = "1011001110001101";
    auto flip = [](std::string s, std::initializer_list<int> vars) {
        for (int v : vars) s[v - 1] = s[v - 1] == '0' ? '1' : '0';
        return s;
    };
    return {bits_from_string(p), bits_from_string(flip(p, {4})), bits_from_string(flip(p, {4, 10})),
            bits_from_string("0110110001011011")};
}

FamilyTv tv_unate_nonadaptive(GraphFamily family, std::uint64_t runs, std::uint64_t master, int jobs) {
    const int n_vars = 16, n = 8;
    const QueryBatch batch = unate_tv_batch();
    const BatchDecision accept_all = [](const SimulatedAnswers&) { return true; };
    std::vector<std::uint32_t> direct(runs), simulated(runs);
    const std::uint64_t key = family_key(master, 12, family);
    parallel_for(runs, jobs, [&](std::size_t r) {
        const std::uint64_t rs = derive_seed(key, r);
        const UnateSetup setup = sample_unate_setup(n_vars, derive_seed(rs, 0));
        VertexMap vm(n_vars, setup.M);
        Stream arng(derive_seed(rs, 1));
        UnateInstance f(n_vars, setup.M, setup.m1, setup.m2, sample_subset_of(arng, vm.Mbar(), n / 2), family,
                        derive_seed(rs, 2), setup.terms);
        SimulatedAnswers a;
        for (const auto& z : batch) a.push_back(f.eval(z));
        direct[r] = pack(a);
        const Graph g = build_graph(sample_partition(n, derive_seed(rs, 3)), family);
        OracleSession session(g, derive_seed(rs, 4));
        simulated[r] =
            pack(run_unate_nonadaptive_reduction(accept_all, batch, session, derive_seed(rs, 5), setup).answers);
    });
    return finish_tv(family, direct, simulated, static_cast<int>(batch.size()), master);
}

// ---------------------------------------------------------------- suites

namespace {

std::vector<GraphFamily> families_from(const Config& cfg) {
    std::string f = cfg.str("family", "both");
    if (f == "both") return {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite};
    try {
        return {parse_family(f)};
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::uint64_t positive(const Config& cfg, const std::string& key, std::uint64_t dflt) {
    std::uint64_t v = cfg.u64(key, dflt);
    if (v == 0) throw UsageError("'" + key + "' must be positive");
    return v;
}

Report advantage_suite(const Config& cfg, int jobs) {
    Report r;
    const int n = static_cast<int>(positive(cfg, "n", 64));
    const int trials = static_cast<int>(positive(cfg, "trials", 500));
    const int reps = static_cast<int>(cfg.integer("reps", default_repetitions(n)));
    const std::uint64_t seed = cfg.u64("seed", 1);
    const double min_adv = cfg.real("min_advantage", 0.9);
    const double max_hw = cfg.real("max_half_width", 0.05);
    if (trials < 30) throw UsageError("advantage estimation needs at least 30 trials");
    if (reps < 1) throw UsageError("reps must be >= 1");
    r.columns = {"trial", "family", "verdict", "cost", "odd_cycle_found"};
    int hits[2] = {0, 0};
    for (GraphFamily fam : {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite}) {
        for (const auto& row : run_distinguisher_trials(n, fam, reps, trials, seed, jobs)) {
            r.rows.push_back({std::to_string(row.trial), family_name(row.family), verdict_name(row.verdict),
                              std::to_string(row.cost), row.odd_cycle_found ? "1" : "0"});
            hits[fam == GraphFamily::CompleteBipartite] += row.verdict == Verdict::OutputG1;
        }
    }
    const double p1 = static_cast<double>(hits[0]) / trials, p2 = static_cast<double>(hits[1]) / trials;
    const double hw1 = wilson_interval(hits[0], trials).half_width();
    const double hw2 = wilson_interval(hits[1], trials).half_width();
    r.summary = {{"p1", fmt(p1)}, {"p2", fmt(p2)}, {"advantage", fmt(p1 - p2)},
                 {"half_width_p1", fmt(hw1)}, {"half_width_p2", fmt(hw2)}};
    r.checks.push_back({"advantage", p1 - p2 >= min_adv, fmt(p1 - p2) + " >= " + fmt(min_adv)});
    r.checks.push_back({"half_width", std::max(hw1, hw2) <= max_hw, fmt(std::max(hw1, hw2)) + " <= " + fmt(max_hw)});
    r.checks.push_back({"one_sided", hits[1] == 0, std::to_string(hits[1]) + " G1 verdicts on g2"});
    return r;
}

Report tv_suite(const Config& cfg, int jobs, const char* which) {
    Report r;
    const std::uint64_t runs = positive(cfg, "runs", 100000);
    const std::uint64_t seed = cfg.u64("seed", 1);
    const double dflt = std::string(which) == "tv-unate-nonadaptive" ? 0.05 : 0.02;
    const double max_tv = cfg.real("max_tv", dflt);
    if (runs < 10000) throw UsageError("tv estimation needs at least 10^4 runs");
    r.columns = {"family", "tv", "ci_lo", "ci_hi", "runs"};
    for (GraphFamily fam : families_from(cfg)) {
        FamilyTv t;
        if (std::string(which) == "tv-junta")
            t = tv_junta(fam, runs, seed, jobs);
        else if (std::string(which) == "tv-unate-adaptive")
            t = tv_unate_adaptive(fam, runs, seed, jobs);
        else
            t = tv_unate_nonadaptive(fam, runs, seed, jobs);
        r.rows.push_back({family_name(fam), fmt(t.tv.tv), fmt(t.tv.ci_lo), fmt(t.tv.ci_hi), std::to_string(runs)});
        r.checks.push_back({"tv_" + family_name(fam), t.tv.tv <= max_tv, fmt(t.tv.tv) + " <= " + fmt(max_tv)});
    }
    return r;
}

Report distance_trend_suite(const Config& cfg, int jobs) {
    Report r;
    const auto junta_ns = cfg.int_list("junta_n", {8, 12});
    const auto unate_ns = cfg.int_list("unate_n", {16});
    const int seeds = static_cast<int>(positive(cfg, "seeds", 50));
    const std::uint64_t master = cfg.u64("seed", 1);
    r.columns = {"kind", "n", "family", "seed_index", "distance", "value"};
    struct Job {
        bool unate;
        int n;
        GraphFamily fam;
        int s;
    };
    std::vector<Job> work;
    for (int n : junta_ns)
        for (GraphFamily f : {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite})
            for (int s = 0; s < seeds; ++s) work.push_back({false, n, f, s});
    for (int n : unate_ns)
        for (GraphFamily f : {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite})
            for (int s = 0; s < seeds; ++s) work.push_back({true, n, f, s});
    std::vector<Fraction> dist(work.size(), Fraction(0, 1));
    parallel_for(work.size(), jobs, [&](std::size_t i) {
        const Job& w = work[i];
        // seeds are shared across the two families
        const std::uint64_t s = derive_seed(derive_seed(master, (w.unate ? 2000 : 1000) + w.n), w.s);
        if (w.unate)
            dist[i] = dist_to_unate_exact(UnateInstance::sample(w.n, w.fam, s).table());
        else
            dist[i] = dist_to_kjunta_exact(JuntaInstance::sample(w.n, w.fam, s).table(), 3 * w.n / 4);
    });
    std::map<std::tuple<bool, int, GraphFamily>, std::vector<double>> by;
    for (std::size_t i = 0; i < work.size(); ++i) {
        const Job& w = work[i];
        r.rows.push_back({w.unate ? "unate" : "junta", std::to_string(w.n), family_name(w.fam), std::to_string(w.s),
                          dist[i].str(), fmt(dist[i].value())});
        by[{w.unate, w.n, w.fam}].push_back(dist[i].value());
    }
    auto add = [&](bool unate, int n) {
        // junta: yes = TwoCliques, no = CompleteBipartite; unate: the other way round
        const GraphFamily yes = unate ? GraphFamily::CompleteBipartite : GraphFamily::TwoCliques;
        const GraphFamily no = unate ? GraphFamily::TwoCliques : GraphFamily::CompleteBipartite;
        const double my = median(by[{unate, n, yes}]), mn = median(by[{unate, n, no}]);
        const std::string tag = std::string(unate ? "unate" : "junta") + "_n" + std::to_string(n);
        r.summary.push_back({tag + "_median_yes", fmt(my)});
        r.summary.push_back({tag + "_median_no", fmt(mn)});
        r.checks.push_back({tag + "_trend", mn > my, fmt(mn) + " > " + fmt(my)});
    };
    for (int n : junta_ns) add(false, n);
    for (int n : unate_ns) add(true, n);
    return r;
}

Report event_frequency_suite(const Config& cfg, int jobs) {
    Report r;
    const int n = static_cast<int>(positive(cfg, "n", 1024));
    const int trials = static_cast<int>(positive(cfg, "trials", 200));
    const std::uint64_t seed = cfg.u64("seed", 1);
    const GraphFamily fam = parse_family(cfg.str("family", "g1"));
    const std::uint64_t lg = static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(n)));
    std::uint64_t lg6 = 1;
    for (int i = 0; i < 6; ++i) lg6 *= lg;
    const std::uint64_t budget = cfg.u64("budget", static_cast<std::uint64_t>(n) * n / std::max<std::uint64_t>(lg6, 1));
    const int qsize = static_cast<int>(cfg.integer("query_size", std::max<std::uint64_t>(1, n / (lg * lg))));
    const double c = cfg.real("balance_c", 1.0);
    const double min_freq = cfg.real("min_frequency", 0.9);
    if (qsize < 1) throw UsageError("query_size must be positive");
    std::vector<EventReport> reps(trials);
    parallel_for(static_cast<std::size_t>(trials), jobs, [&](std::size_t t) {
        const std::uint64_t ts = derive_seed(seed, t);
        const Partition p = sample_partition(n, derive_seed(ts, 0));
        const Graph g = build_graph(p, fam);
        reps[t] = analyze(random_query_transcript(g, budget, qsize, derive_seed(ts, 1)), p, c);
    });
    r.columns = {"trial", "cost", "non_empty", "e_T", "e_F", "e_B", "B", "e_W", "W", "V"};
    int cT = 0, cF = 0, cB = 0;
    for (int t = 0; t < trials; ++t) {
        const auto& e = reps[t];
        cT += e.e_T;
        cF += e.e_F;
        cB += e.e_B;
        r.rows.push_back({std::to_string(t), std::to_string(e.cost), std::to_string(e.non_empty), e.e_T ? "1" : "0",
                          e.e_F ? "1" : "0", e.e_B ? "1" : "0", std::to_string(e.B), e.e_W ? "1" : "0",
                          std::to_string(e.W), std::to_string(e.V)});
    }
    r.summary = {{"budget", std::to_string(budget)}, {"ef_bound", std::to_string(ef_bound(n))}};
    for (auto [name, cnt] : {std::pair{"e_T", cT}, std::pair{"e_F", cF}, std::pair{"e_B", cB}}) {
        const double f = static_cast<double>(cnt) / trials;
        r.summary.push_back({std::string("freq_") + name, fmt(f)});
        r.checks.push_back({std::string("freq_") + name, f >= min_freq, fmt(f) + " >= " + fmt(min_freq)});
    }
    return r;
}

Report chi_table_suite(const Config& cfg, int) {
    Report r;
    const auto ns = cfg.int_list("n", {8, 12, 16, 20});
    const std::uint64_t seed = cfg.u64("seed", 1);
    r.columns = {"n", "family", "chi_junta", "chi_unate"};
    for (int n : ns) {
        if (n < 4 || n % 2) throw UsageError("chi-table needs even n >= 4");
        for (GraphFamily fam : {GraphFamily::TwoCliques, GraphFamily::CompleteBipartite}) {
            const Graph g = build_graph(sample_partition(n, derive_seed(seed, n)), fam);
            const Fraction cj = chi_junta(g, n / 2), cu = chi_unate(g);
            r.rows.push_back({std::to_string(n), family_name(fam), cj.str(), cu.str()});
            const std::string tag = family_name(fam) + "_n" + std::to_string(n);
            const Fraction want = fam == GraphFamily::TwoCliques ? Fraction(1, 2) : Fraction(3, 4);
            r.checks.push_back({"chi_junta_" + tag, cj == want, cj.str() + " vs " + want.str()});
            if (fam == GraphFamily::CompleteBipartite)
                r.checks.push_back({"chi_unate_" + tag, cu == Fraction(0, 1), cu.str() + " vs 0"});
        }
    }
    return r;
}

const std::map<std::string, std::function<Report(const Config&, int)>>& suites() {
    static const std::map<std::string, std::function<Report(const Config&, int)>> table = {
        {"advantage", advantage_suite},
        {"tv-junta", [](const Config& c, int j) { return tv_suite(c, j, "tv-junta"); }},
        {"tv-unate-adaptive", [](const Config& c, int j) { return tv_suite(c, j, "tv-unate-adaptive"); }},
        {"tv-unate-nonadaptive", [](const Config& c, int j) { return tv_suite(c, j, "tv-unate-nonadaptive"); }},
        {"distance-trend", distance_trend_suite},
        {"event-frequency", event_frequency_suite},
        {"chi-table", chi_table_suite},
    };
    return table;
}

} // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : suites()) out.push_back(k);
    return out;
}

Report run_suite(const std::string& suite, const Config& cfg, int jobs) {
    auto it = suites().find(suite);
    if (it == suites().end()) throw UsageError("unknown suite '" + suite + "'");
    Report r = it->second(cfg, jobs);
    r.suite = suite;
    r.config = cfg.effective();
    return r;
}

} // namespace rejsamp
