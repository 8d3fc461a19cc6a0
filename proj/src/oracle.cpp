#include "rejsamp/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rejsamp {

std::uint64_t cost(const Transcript& t) {
    std::uint64_t c = 0;
    for (const auto& e : t.entries) c += e.query.size();
    return c;
}

OracleSession::OracleSession(const Graph& g, std::uint64_t seed)
    : g_(&g), seed_(seed), rng_(seed), mark_(g.n_vertices() + 1, 0) {}

Response OracleSession::query(std::vector<int> L) {
    if (g_->n_edges() == 0) throw std::domain_error("rejection sampling on an edgeless graph");
    std::sort(L.begin(), L.end());
    L.erase(std::unique(L.begin(), L.end()), L.end());
    if (!L.empty() && (L.front() < 1 || L.back() > g_->n_vertices()))
        throw std::invalid_argument("query vertex outside [1.." + std::to_string(g_->n_vertices()) + "]");

    if (++stamp_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        stamp_ = 1;
    }
    for (int v : L) mark_[v] = stamp_;

    const Edge& e = g_->edges()[rng_.below(g_->n_edges())];
    bool in_u = mark_[e.u] == stamp_, in_v = mark_[e.v] == stamp_;
    Response r;
    if (in_u && in_v)
        r = Response::pair(e.u, e.v);
    else if (in_u)
        r = Response::lone(e.u);
    else if (in_v)
        r = Response::lone(e.v);

    transcript_.total_cost += L.size();
    transcript_.entries.push_back({std::move(L), r});
    return r;
}

std::vector<Response> OracleSession::batch_query(const std::vector<std::vector<int>>& queries) {
    std::vector<Response> out;
    out.reserve(queries.size());
    for (const auto& L : queries) out.push_back(query(L));
    return out;
}

void write_transcript(std::ostream& os, const Transcript& t, std::uint64_t seed, std::uint64_t graph_hash) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(graph_hash));
    os << "# seed " << seed << " graph " << hash << '\n';
    for (const auto& e : t.entries) {
        os << "Q " << e.query.size();
        for (int v : e.query) os << ' ' << v;
        os << " | R ";
        switch (e.response.kind) {
        case Response::Kind::Empty: os << "EMPTY"; break;
        case Response::Kind::Lone: os << "LONE " << e.response.a; break;
        case Response::Kind::EdgePair: os << "EDGE " << e.response.a << ' ' << e.response.b; break;
        }
        os << '\n';
    }
}

Transcript read_transcript(std::istream& is) {
    Transcript t;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag, bar, rtag, kind;
        std::size_t size = 0;
        if (!(ls >> tag >> size) || tag != "Q") throw std::invalid_argument("transcript line " + std::to_string(lineno));
        TranscriptEntry e;
        e.query.resize(size);
        for (auto& v : e.query)
            if (!(ls >> v)) throw std::invalid_argument("transcript line " + std::to_string(lineno) + ": short query");
        if (!(ls >> bar >> rtag >> kind) || bar != "|" || rtag != "R")
            throw std::invalid_argument("transcript line " + std::to_string(lineno) + ": missing response");
        if (kind == "EMPTY") {
            e.response = Response::empty();
        } else if (kind == "LONE") {
            int v = 0;
            if (!(ls >> v)) throw std::invalid_argument("transcript line " + std::to_string(lineno));
            e.response = Response::lone(v);
        } else if (kind == "EDGE") {
            int u = 0, v = 0;
            if (!(ls >> u >> v)) throw std::invalid_argument("transcript line " + std::to_string(lineno));
            e.response = Response::pair(u, v);
        } else {
            throw std::invalid_argument("transcript line " + std::to_string(lineno) + ": unknown response " + kind);
        }
        t.total_cost += e.query.size();
        t.entries.push_back(std::move(e));
    }
    return t;
}

} // namespace rejsamp
