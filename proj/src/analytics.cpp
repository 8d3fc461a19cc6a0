#include "rejsamp/analytics.hpp"
#include "rejsamp/common.hpp"
#include "rejsamp/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rejsamp {

std::uint64_t ComponentDecomposition::V() const {
    std::uint64_t v = 0;
    for (const auto& c : components) v += c.vertices.size();
    return v;
}

ComponentDecomposition decompose(const Graph& observed) {
    const int n = observed.n_vertices();
    const auto adj = observed.adjacency();
    std::vector<int> layer(n + 1, 0), comp(n + 1, -1);
    ComponentDecomposition d;
    for (int s = 1; s <= n; ++s) {
        if (comp[s] != -1 || adj[s].empty()) continue;
        Component c;
        c.root = s;
        const int id = static_cast<int>(d.components.size());
        std::vector<int> queue{s};
        comp[s] = id;
        layer[s] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (int w : adj[v])
                if (comp[w] == -1) {
                    comp[w] = id;
                    layer[w] = layer[v] + 1;
                    queue.push_back(w);
                }
        }
        c.vertices = queue;
        std::sort(c.vertices.begin(), c.vertices.end());
        for (int v : c.vertices) (layer[v] % 2 ? c.odd : c.even).push_back(v);
        d.components.push_back(std::move(c));
    }
    for (const auto& e : observed.edges()) d.components[comp[e.u]].edges.push_back(e);
    for (auto& c : d.components) c.acyclic = c.edges.size() + 1 == c.vertices.size();
    return d;
}

ComponentDecomposition decompose(const Transcript& t, int n_vertices) {
    return decompose(observed_graph(t, n_vertices));
}

bool event_ET(const ComponentDecomposition& d, int n) {
    const std::size_t lg = static_cast<std::size_t>(ceil_log2(static_cast<std::uint64_t>(n)));
    for (const auto& c : d.components)
        if (!c.acyclic || c.vertices.size() >= lg) return false;
    return true;
}

std::uint64_t ef_bound(int n) {
    const std::uint64_t lg = static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(n)));
    const std::uint64_t den = lg * lg * lg * lg;
    return den == 0 ? static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n) / den;
}

std::uint64_t non_empty_responses(const Transcript& t) {
    std::uint64_t c = 0;
    for (const auto& e : t.entries) c += !e.response.is_empty();
    return c;
}

bool event_EF(const Transcript& t, int n) { return non_empty_responses(t) <= ef_bound(n); }

bool consistency(const ComponentDecomposition& d, const Partition& A, GraphFamily family) {
    for (const auto& c : d.components) {
        const bool side = A.contains(c.root);
        if (family == GraphFamily::TwoCliques) {
            for (int v : c.vertices)
                if (A.contains(v) != side) return false;
        } else {
            // an edge inside one layer parity means an odd cycle, which no bipartite graph explains
            std::vector<int> sorted_odd = c.odd;
            for (const auto& e : c.edges) {
                bool pu = std::binary_search(sorted_odd.begin(), sorted_odd.end(), e.u);
                bool pv = std::binary_search(sorted_odd.begin(), sorted_odd.end(), e.v);
                if (pu == pv) return false;
            }
            for (int v : c.odd)
                if (A.contains(v) != side) return false;
            for (int v : c.even)
                if (A.contains(v) == side) return false;
        }
    }
    return true;
}

BalanceResult balance_statistic(const Transcript& t, const Partition& A, double c) {
    BalanceResult r;
    for (const auto& e : t.entries) {
        if (e.response.kind != Response::Kind::Lone) continue;
        std::int64_t in = 0;
        for (int v : e.query) in += A.contains(v);
        const std::int64_t diff = in - (static_cast<std::int64_t>(e.query.size()) - in);
        r.B += A.contains(e.response.a) ? -diff : diff;
    }
    const int n = A.n_vertices();
    const double bound = c * n / std::max(1, ceil_log2(static_cast<std::uint64_t>(n)));
    r.e_B = static_cast<double>(std::llabs(r.B)) <= bound;
    return r;
}

WStatistic w_statistic(const ComponentDecomposition& d, const Partition& A) {
    WStatistic w;
    for (const auto& c : d.components) {
        w.W += static_cast<std::int64_t>(A.contains(c.root) ? c.odd.size() : c.even.size());
        w.V += static_cast<std::int64_t>(c.vertices.size());
    }
    const double lg = ceil_log2(static_cast<std::uint64_t>(A.n_vertices()));
    const double half = std::sqrt(static_cast<double>(w.V)) * lg;
    w.e_W = std::abs(static_cast<double>(w.W) - w.V / 2.0) <= half;
    return w;
}

EventReport analyze(const Transcript& t, const Partition& A, double c) {
    const int n = A.n_vertices();
    const auto d = decompose(t, n);
    EventReport r;
    r.e_T = event_ET(d, n);
    r.non_empty = non_empty_responses(t);
    r.e_F = r.non_empty <= ef_bound(n);
    const auto b = balance_statistic(t, A, c);
    r.B = b.B;
    r.e_B = b.e_B;
    r.e_C_yes = consistency(d, A, GraphFamily::TwoCliques);
    r.e_C_no = consistency(d, A, GraphFamily::CompleteBipartite);
    const auto w = w_statistic(d, A);
    r.W = w.W;
    r.V = w.V;
    r.e_W = w.e_W;
    r.cost = t.total_cost;
    r.components = d.components.size();
    return r;
}

} // namespace rejsamp
