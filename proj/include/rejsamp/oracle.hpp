#pragma once

#include "rejsamp/graph.hpp"
#include "rejsamp/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rejsamp {

struct Response {
    enum class Kind { Empty, Lone, EdgePair };
    Kind kind = Kind::Empty;
    int a = 0; // Lone vertex, or smaller EdgePair endpoint
    int b = 0; // larger EdgePair endpoint

    static Response empty() { return {}; }
    static Response lone(int v) { return {Kind::Lone, v, 0}; }
    static Response pair(int u, int v) { return {Kind::EdgePair, std::min(u, v), std::max(u, v)}; }
    bool is_empty() const { return kind == Kind::Empty; }
    friend bool operator==(const Response&, const Response&) = default;
};

struct TranscriptEntry {
    std::vector<int> query; // sorted
    Response response;
};

struct Transcript {
    std::vector<TranscriptEntry> entries;
    std::uint64_t total_cost = 0;
};

std::uint64_t cost(const Transcript& t);

// Rejection sampling oracle bound to one graph. Single-threaded.
class OracleSession {
public:
    OracleSession(const Graph& g, std::uint64_t seed);

    Response query(std::vector<int> L);
    std::vector<Response> batch_query(const std::vector<std::vector<int>>& queries);

    const Graph& graph() const { return *g_; }
    const Transcript& transcript() const { return transcript_; }
    std::uint64_t seed() const { return seed_; }

private:
    const Graph* g_;
    std::uint64_t seed_;
    Stream rng_;
    Transcript transcript_;
    std::vector<std::uint32_t> mark_; // query membership, stamped per query
    std::uint32_t stamp_ = 0;
};

// "Q <size> <vertices> | R EMPTY|LONE v|EDGE u v", preceded by a header with seed and graph hash.
void write_transcript(std::ostream& os, const Transcript& t, std::uint64_t seed, std::uint64_t graph_hash);
Transcript read_transcript(std::istream& is);

} // namespace rejsamp
