#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cgs/errors.hpp"

namespace cgs {

/**
 * Immutable simple undirected graph with contiguous vertex ids 0..n-1.
 *
 * Edges are stored once as (u,v) with u < v; the edge id is the position in
 * that sequence. Adjacency lists are sorted ascending by neighbor id, which
 * fixes the tie-breaking order of every traversal in the library.
 */
class Graph {
public:
    struct Neighbor {
        int vertex;
        int edge;
    };

    /// Builds a graph from an edge list. Throws SelfLoopError on loops,
    /// Error on duplicate edges or out-of-range vertex ids.
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges) {
        if (n < 2)
            throw TooSmallError("graph needs at least 2 vertices, got " + std::to_string(n));
        Graph g;
        g.n_ = n;
        g.edges_.reserve(edges.size());
        g.edge_index_.reserve(edges.size() * 2);
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw Error("vertex id out of range: (" + std::to_string(u) + "," +
                            std::to_string(v) + ")");
            if (u == v)
                throw SelfLoopError("self-loop at vertex " + std::to_string(u));
            if (u > v) std::swap(u, v);
            auto key = pair_key(u, v);
            if (g.edge_index_.count(key))
                throw Error("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
            g.edge_index_.emplace(key, static_cast<int>(g.edges_.size()));
            g.edges_.emplace_back(u, v);
        }
        g.build_adjacency();
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Edge id -> (u,v) with u < v.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    /// Neighbors of v, ascending by neighbor id, each with its edge id.
    std::span<const Neighbor> neighbors(int v) const {
        return {adj_.data() + adj_start_[v],
                static_cast<std::size_t>(adj_start_[v + 1] - adj_start_[v])};
    }

    int degree(int v) const { return adj_start_[v + 1] - adj_start_[v]; }

    /// Edge id of {u,v}, or nullopt if not an edge.
    std::optional<int> edge_id(int u, int v) const {
        if (u == v) return std::nullopt;
        if (u > v) std::swap(u, v);
        auto it = edge_index_.find(pair_key(u, v));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

private:
    Graph() = default;

    static std::uint64_t pair_key(int u, int v) {
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    }

    void build_adjacency() {
        adj_start_.assign(n_ + 1, 0);
        for (auto [u, v] : edges_) {
            ++adj_start_[u + 1];
            ++adj_start_[v + 1];
        }
        for (int i = 0; i < n_; ++i) adj_start_[i + 1] += adj_start_[i];
        adj_.resize(edges_.size() * 2);
        std::vector<int> fill(adj_start_.begin(), adj_start_.end() - 1);
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            auto [u, v] = edges_[e];
            adj_[fill[u]++] = {v, e};
            adj_[fill[v]++] = {u, e};
        }
        for (int v = 0; v < n_; ++v) {
            std::sort(adj_.begin() + adj_start_[v], adj_.begin() + adj_start_[v + 1],
                      [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
        }
    }

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<Neighbor> adj_;
    std::vector<int> adj_start_;
    std::unordered_map<std::uint64_t, int> edge_index_;
};

/// First vertex unreachable from vertex 0, or nullopt if connected.
inline std::optional<int> find_unreachable(const Graph& g) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (const auto& nb : g.neighbors(v)) {
            if (!seen[nb.vertex]) {
                seen[nb.vertex] = 1;
                queue.push_back(nb.vertex);
            }
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen[v]) return v;
    return std::nullopt;
}

inline bool is_connected(const Graph& g) { return !find_unreachable(g).has_value(); }

// ---------------------------------------------------------------------------
// Named generators

inline Graph make_complete(int n) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, std::move(edges));
}

inline Graph make_path(int n) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::move(edges));
}

inline Graph make_cycle(int n) {
    if (n < 3) throw Error("cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n);
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(n - 1, 0);
    return Graph::from_edges(n, std::move(edges));
}

/// Vertex 0 is the center.
inline Graph make_star(int n) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
    return Graph::from_edges(n, std::move(edges));
}

/// Outer 5-cycle 0..4, inner pentagram 5..9 (step 2), spokes i -- i+5.
inline Graph make_petersen() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);
    for (int i = 0; i < 5; ++i) edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    for (int i = 0; i < 5; ++i) edges.emplace_back(i, i + 5);
    return Graph::from_edges(10, std::move(edges));
}

namespace detail {

/// splitmix64; used to derive independent per-attempt and per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// xorshift-based uniform double in [0,1); engine-stable across platforms.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : state_(mix_seed(seed ^ 0x853c49e6748fea9bULL)) {}
    double next() {
        state_ = mix_seed(state_);
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace detail

/// G(n,p) conditioned on connectivity: resamples with a derived seed until
/// connected, up to max_retries attempts.
inline Graph make_erdos_renyi(int n, double p, std::uint64_t seed, int max_retries = 64) {
    if (n < 2) throw TooSmallError("erdos_renyi needs n >= 2");
    if (!(p > 0.0 && p <= 1.0)) throw Error("erdos_renyi needs 0 < p <= 1");
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        detail::SeededUniform rng(detail::mix_seed(seed) + static_cast<std::uint64_t>(attempt));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next() < p) edges.emplace_back(u, v);
        if (edges.empty()) continue;
        Graph g = Graph::from_edges(n, std::move(edges));
        if (is_connected(g)) return g;
    }
    throw DisconnectedSampleError("no connected G(" + std::to_string(n) + "," +
                                  std::to_string(p) + ") sample in " +
                                  std::to_string(max_retries) + " attempts");
}

// ---------------------------------------------------------------------------
// Graph families

enum class FamilyKind { complete, path, cycle, star, petersen, erdos_renyi };

struct GraphFamily {
    FamilyKind kind = FamilyKind::complete;
    int n = 2;
    double p = 0.5;            // erdos_renyi only
    std::uint64_t seed = 0;    // erdos_renyi only
};

inline std::optional<FamilyKind> family_from_name(const std::string& name) {
    if (name == "complete") return FamilyKind::complete;
    if (name == "path") return FamilyKind::path;
    if (name == "cycle") return FamilyKind::cycle;
    if (name == "star") return FamilyKind::star;
    if (name == "petersen") return FamilyKind::petersen;
    if (name == "erdos_renyi") return FamilyKind::erdos_renyi;
    return std::nullopt;
}

inline Graph generate(const GraphFamily& family) {
    if (family.kind != FamilyKind::petersen && family.n < 2)
        throw TooSmallError("family needs n >= 2");
    switch (family.kind) {
        case FamilyKind::complete: return make_complete(family.n);
        case FamilyKind::path: return make_path(family.n);
        case FamilyKind::cycle: return make_cycle(family.n);
        case FamilyKind::star: return make_star(family.n);
        case FamilyKind::petersen: return make_petersen();  // n is fixed at 10
        case FamilyKind::erdos_renyi: return make_erdos_renyi(family.n, family.p, family.seed);
    }
    throw Error("unknown family");
}

// ---------------------------------------------------------------------------
// Edge-list text I/O

struct ParseResult {
    Graph graph;
    std::vector<std::string> labels;   // vertex id -> original token
    int duplicates_collapsed = 0;
};

/**
 * Parses "u v" lines. Tokens are arbitrary labels interned to contiguous ids
 * in first-appearance order. Lines starting with '#' and blank lines are
 * skipped; duplicate edges collapse (counted); a self-loop or a line without
 * exactly two tokens is an error.
 */
inline ParseResult parse_edge_list(std::istream& in) {
    std::unordered_map<std::string, int> intern;
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    std::unordered_map<std::uint64_t, char> seen;
    int duplicates = 0;
    std::string line;
    int lineno = 0;
    auto id_of = [&](const std::string& tok) {
        auto it = intern.find(tok);
        if (it != intern.end()) return it->second;
        int id = static_cast<int>(labels.size());
        intern.emplace(tok, id);
        labels.push_back(tok);
        return id;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;          // blank line
        if (a[0] == '#') continue;         // comment
        if (!(ls >> b)) throw ParseError("expected two vertex labels", lineno);
        if (ls >> extra) throw ParseError("unexpected trailing token '" + extra + "'", lineno);
        if (a == b) throw SelfLoopError("line " + std::to_string(lineno) +
                                        ": self-loop on '" + a + "'");
        int u = id_of(a), v = id_of(b);
        int lo = std::min(u, v), hi = std::max(u, v);
        std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
        if (seen.count(key)) {
            ++duplicates;
            continue;
        }
        seen.emplace(key, 1);
        edges.emplace_back(u, v);
    }
    if (labels.size() < 2)
        throw TooSmallError("edge list defines fewer than 2 distinct vertices");
    return {Graph::from_edges(static_cast<int>(labels.size()), std::move(edges)),
            std::move(labels), duplicates};
}

inline ParseResult parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

/// One "u v" line per edge, lexicographically ascending.
inline void serialize_edge_list(const Graph& g, std::ostream& out) {
    auto sorted = g.edges();
    std::sort(sorted.begin(), sorted.end());
    for (auto [u, v] : sorted) out << u << ' ' << v << '\n';
}

inline std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    serialize_edge_list(g, out);
    return out.str();
}

} // namespace cgs
