#include "rejsamp/analytics.hpp"
#include "rejsamp/distance.hpp"
#include "rejsamp/distinguisher.hpp"
#include "rejsamp/harness.hpp"
#include "rejsamp/junta.hpp"
#include "rejsamp/parallel.hpp"
#include "rejsamp/reductions.hpp"
#include "rejsamp/unate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace rejsamp;

namespace {

// Writes to the file when a path is given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return in;
}

TruthTable read_hex_table(const std::string& path) {
    auto in = open_in(path);
    std::string hex, tok;
    while (in >> tok) hex += tok;
    // one digit per 4 inputs, so a single digit is read as a 2-variable table
    int n = 2;
    while ((std::size_t{1} << (n - 2)) < hex.size()) ++n;
    if ((std::size_t{1} << (n - 2)) != hex.size()) throw UsageError(path + ": hex length is not a power of two");
    return TruthTable::from_hex(n, hex);
}

std::vector<BitVec> read_batch(const std::string& path) {
    auto in = open_in(path);
    std::vector<BitVec> out;
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream is(line);
        std::string tok;
        if (is >> tok) out.push_back(bits_from_string(tok));
    }
    if (out.empty()) throw UsageError(path + ": empty batch");
    return out;
}

// Stand-in decision used by the reduce command: accept when at least half of the answers are 1.
bool majority_accept(const SimulatedAnswers& a) {
    std::size_t ones = 0;
    for (auto b : a) ones += b;
    return 2 * ones >= a.size();
}

int cmd_distinguish(int n, const std::string& family, int reps, int trials, std::uint64_t seed, int jobs,
                    const std::string& out) {
    if (trials < 1) throw UsageError("--trials must be positive");
    if (reps < 0) reps = default_repetitions(n);
    std::optional<GraphFamily> fam;
    if (family != "auto") fam = parse_family(family);
    Output o(out);
    o.os() << "trial,family,verdict,cost,odd_cycle_found\n";
    for (const auto& r : run_distinguisher_trials(n, fam, reps, trials, seed, jobs))
        o.os() << r.trial << ',' << family_name(r.family) << ',' << verdict_name(r.verdict) << ',' << r.cost << ','
               << (r.odd_cycle_found ? 1 : 0) << '\n';
    return 0;
}

int cmd_distance(const std::string& op, const std::string& t1, const std::string& t2, int k) {
    const TruthTable f = read_hex_table(t1);
    Fraction d;
    if (op == "between") {
        if (t2.empty()) throw UsageError("--op between needs --table2");
        TruthTable g = read_hex_table(t2);
        if (g.n_vars() != f.n_vars()) throw UsageError("tables have different sizes");
        d = dist_between(f, g);
    } else if (op == "junta") {
        if (k < 0) throw UsageError("--op junta needs --k");
        d = dist_to_kjunta_exact(f, k);
    } else if (op == "monotone") {
        d = dist_to_monotone_exact(f);
    } else if (op == "unate") {
        d = dist_to_unate_exact(f);
    } else {
        throw UsageError("unknown --op " + op);
    }
    std::cout << d.str() << '\n';
    return 0;
}

int cmd_reduce(const std::string& kind, const std::string& batch_path, const std::string& family, int n,
               std::uint64_t seed, int trials, const std::string& out) {
    const auto batch = read_batch(batch_path);
    for (const auto& z : batch)
        if (static_cast<int>(z.size()) != 2 * n) throw UsageError("batch queries must have 2n bits");
    if (trials < 1) throw UsageError("--trials must be positive");
    const GraphFamily fam = parse_family(family);
    Output o(out);
    o.os() << "trial,verdict,cost,answers\n";
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, static_cast<std::uint64_t>(t));
        const Graph g = build_graph(sample_partition(n, derive_seed(ts, 0)), fam);
        OracleSession session(g, derive_seed(ts, 1));
        ReductionOutcome r;
        if (kind == "junta") {
            r = run_junta_reduction(majority_accept, batch, session, derive_seed(ts, 2));
        } else if (kind == "unate-nonadaptive") {
            if (!unate_nonadaptive_budget_ok(n, batch.size()))
                std::cerr << "warning: q exceeds the non-adaptive budget for n=" << n << '\n';
            r = run_unate_nonadaptive_reduction(majority_accept, batch, session, derive_seed(ts, 2));
        } else if (kind == "unate-adaptive") {
            // the batch is replayed as a (trivially) adaptive tester
            AdaptiveTester tester = [&](const AskFn& ask) {
                SimulatedAnswers a;
                for (const auto& z : batch) a.push_back(ask(z));
                return majority_accept(a);
            };
            r = run_unate_adaptive_reduction(tester, static_cast<int>(batch.size()), session, derive_seed(ts, 2));
        } else {
            throw UsageError("unknown --kind " + kind);
        }
        std::string bits;
        for (auto b : r.answers) bits += static_cast<char>('0' + b);
        o.os() << t << ',' << verdict_name(r.verdict) << ',' << r.cost << ',' << bits << '\n';
    }
    return 0;
}

int cmd_analyze(const std::string& tpath, const std::string& ppath, const std::string& family, double c,
                const std::string& out) {
    auto tin = open_in(tpath);
    auto pin = open_in(ppath);
    const Transcript t = read_transcript(tin);
    const Partition p = read_partition(pin);
    const GraphFamily fam = parse_family(family);
    const auto e = analyze(t, p, c);
    Output o(out);
    o.os() << "family,cost,non_empty,components,e_T,e_F,e_B,e_C,e_W,B,W,V\n";
    o.os() << family_name(fam) << ',' << e.cost << ',' << e.non_empty << ',' << e.components << ',' << e.e_T << ','
           << e.e_F << ',' << e.e_B << ',' << (fam == GraphFamily::TwoCliques ? e.e_C_yes : e.e_C_no) << ','
           << e.e_W << ',' << e.B << ',' << e.W << ',' << e.V << '\n';
    return 0;
}

int cmd_transcript(int n, const std::string& family, std::uint64_t seed, std::uint64_t budget, int qsize,
                   const std::string& tpath, const std::string& ppath) {
    const Partition p = sample_partition(n, derive_seed(seed, 0));
    const Graph g = build_graph(p, parse_family(family));
    const Transcript t = random_query_transcript(g, budget, qsize, derive_seed(seed, 1));
    Output to(tpath);
    write_transcript(to.os(), t, derive_seed(seed, 1), g.hash());
    if (!ppath.empty()) {
        Output po(ppath);
        write_partition(po.os(), p);
    }
    return 0;
}

int cmd_instance(const std::string& kind, int n, const std::string& family, std::uint64_t seed, bool hex,
                 const std::string& out) {
    const GraphFamily fam = parse_family(family);
    Output o(out);
    if (kind == "junta") {
        auto f = JuntaInstance::sample(n, fam, seed);
        if (hex) o.os() << f.table().to_hex() << '\n';
        else write_junta_descriptor(o.os(), f);
    } else if (kind == "unate") {
        auto f = UnateInstance::sample(n, fam, seed);
        if (hex) o.os() << f.table().to_hex() << '\n';
        else write_unate_descriptor(o.os(), f);
    } else {
        throw UsageError("unknown --kind " + kind);
    }
    return 0;
}

int cmd_suite(const std::string& suite, const std::string& config_path, const std::vector<std::string>& sets,
              int jobs, const std::string& out) {
    Config cfg = config_path.empty() ? Config() : Config::load(config_path);
    for (const auto& kv : sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    Report r = run_suite(suite, cfg, jobs);
    for (const auto& k : cfg.unused()) std::cerr << "warning: unused config key '" << k << "'\n";
    Output o(out);
    write_report(o.os(), r);
    for (const auto& c : r.checks)
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    return r.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rejection-sampling lower-bound experiments"};
    app.set_version_flag("--version", std::string(kArtifactVersion));
    app.require_subcommand(1);

    std::function<int()> action;

    int n = 64, reps = -1, trials = 1, k = -1, qsize = 1, jobs = default_jobs();
    std::uint64_t seed = 1, budget = 0;
    double c = 1.0;
    std::string family = "g1", out, op, table, table2, kind, batch, tpath, ppath;
    bool hex = false;

    auto* dist = app.add_subcommand("distinguish", "odd-cycle distinguisher trials");
    dist->add_option("--n", n)->check(CLI::Range(2, 1 << 20));
    dist->add_option("--family", family)->check(CLI::IsMember({"g1", "g2", "auto"}));
    dist->add_option("--reps", reps, "queries of [n] per trial (default 8 n ceil(log2 n))");
    dist->add_option("--trials", trials);
    dist->add_option("--seed", seed);
    dist->add_option("--jobs", jobs);
    dist->add_option("--out", out);
    dist->callback([&] { action = [&] { return cmd_distinguish(n, family, reps, trials, seed, jobs, out); }; });

    auto* dst = app.add_subcommand("distance", "exact distances from hex truth tables");
    dst->add_option("--op", op)->required()->check(CLI::IsMember({"between", "junta", "monotone", "unate"}));
    dst->add_option("--table", table)->required();
    dst->add_option("--table2", table2);
    dst->add_option("--k", k);
    dst->callback([&] { action = [&] { return cmd_distance(op, table, table2, k); }; });

    auto* red = app.add_subcommand("reduce", "simulate tester answers from the sampling oracle");
    red->add_option("--kind", kind)->required()->check(
        CLI::IsMember({"junta", "unate-adaptive", "unate-nonadaptive"}));
    red->add_option("--batch", batch)->required();
    red->add_option("--family", family)->check(CLI::IsMember({"g1", "g2"}));
    red->add_option("--n", n, "graph vertices; queries have 2n bits")->required();
    red->add_option("--seed", seed);
    red->add_option("--trials", trials);
    red->add_option("--out", out);
    red->callback([&] { action = [&] { return cmd_reduce(kind, batch, family, n, seed, trials, out); }; });

    auto* ana = app.add_subcommand("analyze", "transcript events");
    ana->add_option("--transcript", tpath)->required();
    ana->add_option("--partition", ppath)->required();
    ana->add_option("--family", family)->check(CLI::IsMember({"g1", "g2"}));
    ana->add_option("--c", c, "balance threshold constant");
    ana->add_option("--out", out);
    ana->callback([&] { action = [&] { return cmd_analyze(tpath, ppath, family, c, out); }; });

    auto* tr = app.add_subcommand("transcript", "random-query transcript with its hidden partition");
    tr->add_option("--n", n)->required();
    tr->add_option("--family", family)->check(CLI::IsMember({"g1", "g2"}));
    tr->add_option("--seed", seed);
    tr->add_option("--budget", budget)->required();
    tr->add_option("--query-size", qsize);
    tr->add_option("--out", tpath);
    tr->add_option("--partition", ppath);
    tr->callback([&] { action = [&] { return cmd_transcript(n, family, seed, budget, qsize, tpath, ppath); }; });

    auto* ins = app.add_subcommand("instance", "sample a hard instance");
    ins->add_option("--kind", kind)->required()->check(CLI::IsMember({"junta", "unate"}));
    ins->add_option("--n", n)->required();
    ins->add_option("--family", family)->check(CLI::IsMember({"g1", "g2"}));
    ins->add_option("--seed", seed);
    ins->add_flag("--hex", hex, "print the truth table instead of the descriptor");
    ins->add_option("--out", out);
    ins->callback([&] { action = [&] { return cmd_instance(kind, n, family, seed, hex, out); }; });

    std::string config_path;
    std::vector<std::string> sets;
    for (const auto& name : suite_names()) {
        auto* s = app.add_subcommand(name, "experiment suite");
        s->add_option("--config", config_path, "key=value file");
        s->add_option("--set", sets, "override, key=value")->allow_extra_args(false);
        s->add_option("--jobs", jobs);
        s->add_option("--out", out, "report CSV (default stdout)");
        s->callback([&, name] { action = [&, name] { return cmd_suite(name, config_path, sets, jobs, out); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
