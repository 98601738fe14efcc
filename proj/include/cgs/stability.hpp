#pragma once

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cgs/detail/format.hpp"
#include "cgs/errors.hpp"
#include "cgs/graph.hpp"
#include "cgs/shortest_paths.hpp"

namespace cgs {

enum class StrategyTag { single_path, uniform, optimized, brute_force, custom };

inline const char* to_string(StrategyTag tag) {
    switch (tag) {
        case StrategyTag::single_path: return "single_path";
        case StrategyTag::uniform: return "uniform";
        case StrategyTag::optimized: return "optimized";
        case StrategyTag::brute_force: return "brute_force";
        case StrategyTag::custom: return "custom";
    }
    return "?";
}

/**
 * Connection-graph-stability scores, indexed by edge id. Each unordered pair
 * {u,v} spreads one unit of weight over its chosen paths; an edge picks up
 * (path length) x (weight of each chosen path through it).
 */
struct EdgeScores {
    std::vector<double> scores;
    StrategyTag strategy_tag = StrategyTag::single_path;

    double max_score() const { return *std::max_element(scores.begin(), scores.end()); }

    /// Smallest edge id attaining the maximum score.
    int argmax_edge() const {
        int arg = 0;
        for (int e = 1; e < static_cast<int>(scores.size()); ++e)
            if (scores[e] > scores[arg]) arg = e;
        return arg;
    }
};

/// The lower bound n / C_max together with the edge that attains C_max.
struct CgsBound {
    double value = 0.0;
    int argmax_edge = 0;
};

inline CgsBound cgs_bound(const Graph& g, const EdgeScores& s) {
    CgsBound b;
    b.argmax_edge = s.argmax_edge();
    b.value = g.vertex_count() / s.scores[b.argmax_edge];
    return b;
}

namespace detail {

/// Shortest path source..target picking the smallest-id predecessor each step.
inline std::vector<int> smallest_pred_path(const SsspResult<double>& sssp, int target) {
    std::vector<int> path{target};
    while (path.back() != sssp.source) path.push_back(sssp.preds[path.back()][0]);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace detail

/**
 * Scores when every pair routes all weight on one deterministic shortest path
 * (backward walk from the larger endpoint, smallest-id predecessor wins).
 */
inline EdgeScores scores_single_path(const Graph& g, const ApspResult<double>& ap) {
    EdgeScores out{std::vector<double>(g.edge_count(), 0.0), StrategyTag::single_path};
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u) {
        const auto& sssp = ap.sources[u];
        for (int v = u + 1; v < n; ++v) {
            const double d = sssp.dist[v];
            const auto path = detail::smallest_pred_path(sssp, v);
            for (std::size_t i = 0; i + 1 < path.size(); ++i)
                out.scores[*g.edge_id(path[i], path[i + 1])] += d;
        }
    }
    return out;
}

/**
 * Scores when every pair spreads weight uniformly over all its shortest paths.
 *
 * Brandes-style accumulation per source: walking vertices in reverse BFS
 * order, delta(v) = sum over DAG successors w of (sigma(v)/sigma(w)) *
 * (dist(w) + delta(w)); the edge (v,w) picks up that summand. Each unordered
 * pair is seen from both endpoints, so the total is halved. O(n * |E|).
 */
inline EdgeScores scores_uniform(const Graph& g, const ApspResult<double>& ap) {
    EdgeScores out{std::vector<double>(g.edge_count(), 0.0), StrategyTag::uniform};
    const int n = g.vertex_count();
    std::vector<double> delta(n);
    for (int s = 0; s < n; ++s) {
        const auto& r = ap.sources[s];
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
            const int w = *it;
            if (w == s) continue;
            for (const auto& nb : g.neighbors(w)) {
                if (r.dist[nb.vertex] + 1 != r.dist[w]) continue;
                const double c = r.sigma[nb.vertex] / r.sigma[w] * (r.dist[w] + delta[w]);
                out.scores[nb.edge] += c;
                delta[nb.vertex] += c;
            }
        }
    }
    for (double& x : out.scores) x *= 0.5;
    return out;
}

/// Total number of shortest paths over all unordered pairs.
inline double total_shortest_path_count(const ApspResult<double>& ap) {
    double total = 0.0;
    const int n = static_cast<int>(ap.sources.size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) total += ap.sources[u].sigma[v];
    return total;
}

inline constexpr double kBruteForceCap = 1e4;

/**
 * Literal evaluation of the score definition by enumerating every shortest
 * path of every pair and applying the named strategy's weights. Oracle-scale
 * only: throws CapExceededError once the total path count passes 1e4.
 */
inline EdgeScores scores_brute_force(const Graph& g, const ApspResult<double>& ap, StrategyTag tag) {
    if (tag != StrategyTag::single_path && tag != StrategyTag::uniform)
        throw Error("scores_brute_force: tag must be single_path or uniform");
    if (total_shortest_path_count(ap) > kBruteForceCap)
        throw CapExceededError("total shortest-path count exceeds brute-force cap");
    EdgeScores out{std::vector<double>(g.edge_count(), 0.0), StrategyTag::brute_force};
    const int n = g.vertex_count();
    const auto cap = static_cast<std::size_t>(kBruteForceCap);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const auto paths = enumerate_shortest_paths(g, ap, u, v, cap);
            const double d = ap.sources[u].dist[v];
            std::vector<int> chosen;
            if (tag == StrategyTag::single_path) chosen = detail::smallest_pred_path(ap.sources[u], v);
            for (const auto& path : paths) {
                double weight = 0.0;
                if (tag == StrategyTag::uniform) weight = 1.0 / static_cast<double>(paths.size());
                else if (path == chosen) weight = 1.0;
                if (weight == 0.0) continue;
                for (std::size_t i = 0; i + 1 < path.size(); ++i)
                    out.scores[*g.edge_id(path[i], path[i + 1])] += weight * d;
            }
        }
    }
    return out;
}

/**
 * Experimentation hook: score an externally supplied path selection, one
 * simple path per unordered pair (paths need not be shortest). Throws Error
 * unless the selection covers every pair exactly once with valid paths.
 */
inline EdgeScores scores_custom_paths(const Graph& g, const std::vector<std::vector<int>>& paths) {
    const int n = g.vertex_count();
    EdgeScores out{std::vector<double>(g.edge_count(), 0.0), StrategyTag::custom};
    std::set<std::pair<int, int>> covered;
    for (const auto& path : paths) {
        if (path.size() < 2) throw Error("custom path with fewer than two vertices");
        std::set<int> seen(path.begin(), path.end());
        if (seen.size() != path.size()) throw Error("custom path repeats a vertex");
        const double len = static_cast<double>(path.size() - 1);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const auto id = g.edge_id(path[i], path[i + 1]);
            if (!id) throw Error("custom path uses a non-edge");
            out.scores[*id] += len;
        }
        auto [u, v] = std::minmax(path.front(), path.back());
        if (!covered.emplace(u, v).second) throw Error("custom selection covers a pair twice");
    }
    if (static_cast<int>(covered.size()) != n * (n - 1) / 2)
        throw Error("custom selection must cover every vertex pair");
    return out;
}

/// CSV export: header "edge_id,u,v,score", one row per edge id.
inline void write_scores_csv(const Graph& g, const EdgeScores& s, std::ostream& out) {
    out << "edge_id,u,v,score\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& [u, v] = g.edges()[e];
        out << e << ',' << u << ',' << v << ',' << detail::format_real(s.scores[e]) << '\n';
    }
}

inline std::string write_scores_csv(const Graph& g, const EdgeScores& s) {
    std::ostringstream out;
    write_scores_csv(g, s, out);
    return out.str();
}

} // namespace cgs
