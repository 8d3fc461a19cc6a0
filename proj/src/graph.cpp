#include "rejsamp/graph.hpp"
#include "rejsamp/common.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace rejsamp {

namespace {

std::uint64_t choose2(std::uint64_t a) { return a < 2 ? 0 : a * (a - 1) / 2; }

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
    std::vector<std::uint32_t> adj(g.n_vertices(), 0);
    for (const auto& e : g.edges()) {
        adj[e.u - 1] |= 1u << (e.v - 1);
        adj[e.v - 1] |= 1u << (e.u - 1);
    }
    return adj;
}

void require_brute_force(const Graph& g) {
    if (g.n_edges() == 0) throw std::domain_error("chi is undefined on an edgeless graph");
    if (g.n_vertices() > kBruteForceVertexCap)
        throw CapacityError("brute-force chi supports at most 24 vertices, got " + std::to_string(g.n_vertices()));
}

} // namespace

std::string family_name(GraphFamily f) { return f == GraphFamily::TwoCliques ? "g1" : "g2"; }

GraphFamily parse_family(const std::string& s) {
    if (s == "g1" || s == "two-cliques" || s == "TwoCliques") return GraphFamily::TwoCliques;
    if (s == "g2" || s == "bipartite" || s == "CompleteBipartite") return GraphFamily::CompleteBipartite;
    throw std::invalid_argument("unknown graph family '" + s + "'");
}

Graph::Graph(int n_vertices, std::vector<Edge> edges) : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
    for (auto& e : edges_) {
        if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u < 1 || e.v > n_)
            throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") outside [1.." +
                                        std::to_string(n_) + "]");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw std::invalid_argument("duplicate edge");
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(n_ + 1);
    for (const auto& e : edges_) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    return adj;
}

std::uint64_t Graph::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t w) {
        for (int i = 0; i < 8; ++i) {
            h ^= (w >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    feed(static_cast<std::uint64_t>(n_));
    for (const auto& e : edges_) feed((static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v));
    return h;
}

Partition::Partition(int n_vertices, std::vector<int> A) : n_(n_vertices), a_(std::move(A)), in_a_(n_vertices + 1, 0) {
    if (n_ < 1) throw std::invalid_argument("partition needs at least one vertex");
    std::sort(a_.begin(), a_.end());
    for (int v : a_) {
        if (v < 1 || v > n_) throw std::invalid_argument("partition vertex " + std::to_string(v) + " out of range");
        if (in_a_[v]) throw std::invalid_argument("partition vertex " + std::to_string(v) + " repeated");
        in_a_[v] = 1;
    }
}

std::vector<int> Partition::complement() const {
    std::vector<int> out;
    out.reserve(n_ - a_.size());
    for (int v = 1; v <= n_; ++v)
        if (!in_a_[v]) out.push_back(v);
    return out;
}

Partition sample_partition(int n, Stream& rng) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("partition size must be even and >= 2, got n=" + std::to_string(n));
    return Partition(n, sample_subset(rng, n, n / 2));
}

Partition sample_partition(int n, std::uint64_t seed) {
    Stream rng(seed);
    return sample_partition(n, rng);
}

Graph build_graph(const Partition& p, GraphFamily family) {
    const auto& A = p.A();
    const auto B = p.complement();
    std::vector<Edge> edges;
    if (family == GraphFamily::TwoCliques) {
        edges.reserve(choose2(A.size()) + choose2(B.size()));
        for (const auto* side : {&A, &B})
            for (std::size_t i = 0; i < side->size(); ++i)
                for (std::size_t j = i + 1; j < side->size(); ++j) edges.push_back({(*side)[i], (*side)[j]});
    } else {
        edges.reserve(A.size() * B.size());
        for (int a : A)
            for (int b : B) edges.push_back({std::min(a, b), std::max(a, b)});
    }
    return Graph(p.n_vertices(), std::move(edges));
}

std::uint64_t edges_between(const Graph& g, const std::vector<int>& S1, const std::vector<int>& S2) {
    std::vector<char> in1(g.n_vertices() + 1, 0), in2(g.n_vertices() + 1, 0);
    for (int v : S1) {
        if (v < 1 || v > g.n_vertices()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
        in1[v] = 1;
    }
    for (int v : S2) {
        if (v < 1 || v > g.n_vertices()) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
        in2[v] = 1;
    }
    std::uint64_t count = 0;
    for (const auto& e : g.edges())
        if ((in1[e.u] && in2[e.v]) || (in1[e.v] && in2[e.u])) ++count;
    return count;
}

Fraction chi_junta_bruteforce(const Graph& g, int min_size) {
    require_brute_force(g);
    const int n = g.n_vertices();
    if (min_size > n) throw std::invalid_argument("min_size exceeds vertex count");
    const auto adj = adjacency_masks(g);
    const std::uint64_t m = g.n_edges();

    // Gray-code walk over all S, tracking |S| and the number of edges inside S^c.
    std::uint32_t S = 0;
    int size = 0;
    std::uint64_t untouched = m;
    std::uint64_t best = (size >= min_size) ? untouched : 0;
    bool found = size >= min_size;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        int v = std::countr_zero(i);
        std::uint32_t b = 1u << v;
        if (!(S & b)) {
            untouched -= std::popcount(adj[v] & ~S);
            S |= b;
            ++size;
        } else {
            S &= ~b;
            untouched += std::popcount(adj[v] & ~S);
            --size;
        }
        if (size >= min_size && (!found || untouched > best)) {
            best = untouched;
            found = true;
        }
    }
    return Fraction(m - best, m);
}

Fraction chi_unate_bruteforce(const Graph& g) {
    require_brute_force(g);
    const int n = g.n_vertices();
    const auto adj = adjacency_masks(g);
    const std::uint64_t m = g.n_edges();

    std::uint32_t S = 0;
    std::int64_t cut = 0, best = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < total; ++i) {
        int v = std::countr_zero(i);
        std::uint32_t b = 1u << v;
        std::int64_t in_s = std::popcount(adj[v] & S);
        std::int64_t out_s = std::popcount(adj[v] & ~S & ~b);
        if (!(S & b)) {
            cut += out_s - in_s;
            S |= b;
        } else {
            cut += in_s - out_s;
            S &= ~b;
        }
        best = std::max(best, cut);
    }
    return Fraction(m - static_cast<std::uint64_t>(best), m);
}

Fraction chi_junta_family(GraphFamily family, int n_vertices, int min_size) {
    if (n_vertices < 2 || n_vertices % 2 != 0) throw std::invalid_argument("family graphs need an even vertex count");
    if (min_size < 0 || min_size > n_vertices) throw std::invalid_argument("min_size out of range");
    const std::uint64_t h = n_vertices / 2;
    const std::uint64_t u = n_vertices - min_size; // largest admissible |S^c|
    std::uint64_t m = 0, untouched = 0;
    if (family == GraphFamily::TwoCliques) {
        m = 2 * choose2(h);
        untouched = u <= h ? choose2(u) : choose2(h) + choose2(u - h);
    } else {
        m = h * h;
        untouched = (u / 2) * (u - u / 2);
    }
    if (m == 0) throw std::domain_error("chi is undefined on an edgeless graph");
    return Fraction(m - untouched, m);
}

Fraction chi_unate_family(GraphFamily family, int n_vertices) {
    if (n_vertices < 2 || n_vertices % 2 != 0) throw std::invalid_argument("family graphs need an even vertex count");
    const std::uint64_t h = n_vertices / 2;
    if (family == GraphFamily::CompleteBipartite) return Fraction(0, 1);
    const std::uint64_t m = 2 * choose2(h);
    if (m == 0) throw std::domain_error("chi is undefined on an edgeless graph");
    return Fraction(2 * (choose2(h / 2) + choose2(h - h / 2)), m);
}

std::optional<GraphFamily> recognize_family(const Graph& g) {
    const int n = g.n_vertices();
    if (n < 2 || n % 2 != 0 || g.n_edges() == 0) return std::nullopt;
    const std::uint64_t h = n / 2;
    const auto adj = g.adjacency();

    // BFS 2-colouring and component sizes
    std::vector<int> color(n + 1, -1), comp_size;
    bool bipartite = true;
    int side0 = 0;
    for (int s = 1; s <= n; ++s) {
        if (color[s] != -1) continue;
        int size = 0;
        std::queue<int> q;
        q.push(s);
        color[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            ++size;
            if (color[v] == 0) ++side0;
            for (int w : adj[v]) {
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    q.push(w);
                } else if (color[w] == color[v]) {
                    bipartite = false;
                }
            }
        }
        comp_size.push_back(size);
    }
    if (comp_size.size() == 1 && bipartite && g.n_edges() == h * h && static_cast<std::uint64_t>(side0) == h)
        return GraphFamily::CompleteBipartite;
    if (comp_size.size() == 2 && static_cast<std::uint64_t>(comp_size[0]) == h &&
        static_cast<std::uint64_t>(comp_size[1]) == h && g.n_edges() == 2 * choose2(h))
        return GraphFamily::TwoCliques;
    return std::nullopt;
}

Fraction chi_junta(const Graph& g, int min_size) {
    if (g.n_edges() == 0) throw std::domain_error("chi is undefined on an edgeless graph");
    if (auto fam = recognize_family(g)) return chi_junta_family(*fam, g.n_vertices(), min_size);
    return chi_junta_bruteforce(g, min_size);
}

Fraction chi_unate(const Graph& g) {
    if (g.n_edges() == 0) throw std::domain_error("chi is undefined on an edgeless graph");
    if (auto fam = recognize_family(g)) return chi_unate_family(*fam, g.n_vertices());
    return chi_unate_bruteforce(g);
}

void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.n_vertices() << ' ' << g.n_edges() << '\n';
    for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& is) {
    long long n = 0, m = 0;
    if (!(is >> n >> m) || n < 1 || m < 0) throw std::invalid_argument("edge list: bad header");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(is >> u >> v)) throw std::invalid_argument("edge list: truncated at edge " + std::to_string(i + 1));
        if (!(1 <= u && u < v && v <= n))
            throw std::invalid_argument("edge list: line " + std::to_string(i + 2) + " must satisfy 1 <= u < v <= n");
        edges.push_back({u, v});
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

void write_partition(std::ostream& os, const Partition& p) {
    os << p.n_vertices() << ' ' << p.A().size() << '\n';
    for (int v : p.A()) os << v << '\n';
}

Partition read_partition(std::istream& is) {
    long long n = 0, k = 0;
    if (!(is >> n >> k) || n < 1 || k < 0 || k > n) throw std::invalid_argument("partition: bad header");
    std::vector<int> A(static_cast<std::size_t>(k));
    for (auto& v : A)
        if (!(is >> v)) throw std::invalid_argument("partition: truncated vertex list");
    return Partition(static_cast<int>(n), std::move(A));
}

} // namespace rejsamp
