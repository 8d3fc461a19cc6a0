#pragma once

#include "rejsamp/distance.hpp"
#include "rejsamp/graph.hpp"
#include "rejsamp/reductions.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rejsamp {

inline constexpr const char* kArtifactVersion = "rejsamp 0.1.0";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat key=value settings; '#' starts a comment. Every value read (including defaults)
// is remembered so reports can echo the effective configuration.
class Config {
public:
    static Config parse(std::istream& is);
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string str(const std::string& key, const std::string& dflt) const;
    std::int64_t integer(const std::string& key, std::int64_t dflt) const;
    std::uint64_t u64(const std::string& key, std::uint64_t dflt) const;
    double real(const std::string& key, double dflt) const;
    std::vector<int> int_list(const std::string& key, const std::vector<int>& dflt) const;

    std::vector<std::pair<std::string, std::string>> effective() const;
    std::vector<std::string> unused() const;

private:
    std::string raw(const std::string& key, const std::string& dflt) const;
    std::map<std::string, std::string> values_;
    mutable std::map<std::string, std::string> used_;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<Check> checks;
    bool pass() const;
};

std::string csv_field(const std::string& s);
// '#' header lines (version, PRNG id, config), the CSV table, then '#' summary and check lines.
void write_report(std::ostream& os, const Report& r);

std::vector<std::string> suite_names();
Report run_suite(const std::string& suite, const Config& cfg, int jobs);

// ---- building blocks shared with the acceptance gate ----

struct FamilyTv {
    GraphFamily family;
    TvEstimate tv;
};

// Fixed (M, A) and 6-query batch over 16 variables (graph on 8 vertices).
struct JuntaTvFixture {
    std::vector<int> M, A;
    QueryBatch batch;
};
JuntaTvFixture junta_tv_fixture();
FamilyTv tv_junta(GraphFamily family, std::uint64_t runs, std::uint64_t master, int jobs);

// Deterministic 4-query adaptive tester over 16 variables.
AdaptiveTester fixed_adaptive_tester();
FamilyTv tv_unate_adaptive(GraphFamily family, std::uint64_t runs, std::uint64_t master, int jobs);

QueryBatch unate_tv_batch(); // 4 queries over 16 variables
FamilyTv tv_unate_nonadaptive(GraphFamily family, std::uint64_t runs, std::uint64_t master, int jobs);

// Batch of `bases` uniform queries, each followed by `copies` perturbations flipping `flips` random coordinates.
QueryBatch perturbed_batch(int n_vars, int bases, int copies, int flips, Stream& rng);

// Random-query transcript on a graph within a total cost budget; queries are uniform
// subsets of size min(query_size, remaining budget).
Transcript random_query_transcript(const Graph& g, std::uint64_t budget, int query_size, std::uint64_t seed);

double median(std::vector<double> v);

} // namespace rejsamp
