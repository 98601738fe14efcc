#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cgs/errors.hpp"
#include "cgs/graph.hpp"

namespace cgs {

/**
 * Single-source BFS result on an unweighted graph.
 *
 * Count is the arithmetic type used for shortest-path counts; double by
 * default, an exact big integer in the oracle tests. dist[source] = 0,
 * sigma[source] = 1, and preds[v] lists exactly the neighbors w of v with
 * dist[w] + 1 = dist[v], sorted ascending. order holds the vertices in
 * dequeue (nondecreasing distance) order.
 */
template <class Count = double>
struct SsspResult {
    int source = 0;
    std::vector<int> dist;
    std::vector<Count> sigma;
    std::vector<std::vector<int>> preds;
    std::vector<int> order;
};

template <class Count = double>
SsspResult<Count> bfs_sssp(const Graph& g, int source) {
    const int n = g.vertex_count();
    SsspResult<Count> r;
    r.source = source;
    r.dist.assign(n, -1);
    r.sigma.assign(n, Count(0));
    r.preds.assign(n, {});
    r.order.reserve(n);
    r.dist[source] = 0;
    r.sigma[source] = Count(1);
    std::vector<int> queue{source};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        r.order.push_back(v);
        for (const auto& nb : g.neighbors(v)) {
            int w = nb.vertex;
            if (r.dist[w] < 0) {
                r.dist[w] = r.dist[v] + 1;
                queue.push_back(w);
            }
            if (r.dist[w] == r.dist[v] + 1) {
                r.sigma[w] += r.sigma[v];
                r.preds[w].push_back(v);
            }
        }
    }
    // predecessors arrive in dequeue order, not id order
    for (auto& p : r.preds) std::sort(p.begin(), p.end());
    return r;
}

/// All-sources BFS bundle plus the diameter.
template <class Count = double>
struct ApspResult {
    std::vector<SsspResult<Count>> sources;
    int diameter = 0;

    int dist(int u, int v) const { return sources[u].dist[v]; }
};

/// Throws NotConnectedError (naming an unreachable vertex) on disconnected input.
template <class Count = double>
ApspResult<Count> apsp(const Graph& g) {
    const int n = g.vertex_count();
    ApspResult<Count> r;
    r.sources.reserve(n);
    for (int s = 0; s < n; ++s) {
        r.sources.push_back(bfs_sssp<Count>(g, s));
        if (static_cast<int>(r.sources.back().order.size()) != n) {
            for (int v = 0; v < n; ++v)
                if (r.sources.back().dist[v] < 0) throw NotConnectedError(v);
        }
        for (int v = 0; v < n; ++v) r.diameter = std::max(r.diameter, r.sources.back().dist[v]);
    }
    return r;
}

/**
 * All distinct shortest u-v paths as vertex sequences, in ascending-predecessor
 * order. Throws CapExceededError once more than cap paths exist, so a result is
 * always complete, never truncated.
 */
template <class Count>
std::vector<std::vector<int>> enumerate_shortest_paths(const Graph& g, const ApspResult<Count>& ap,
                                                       int u, int v, std::size_t cap) {
    (void)g;
    const auto& sssp = ap.sources[u];
    std::vector<std::vector<int>> out;
    std::vector<int> stack{v};
    // backward DFS from v over the predecessor DAG of u
    auto emit = [&]() {
        out.emplace_back(stack.rbegin(), stack.rend());
        if (out.size() > cap)
            throw CapExceededError("more than " + std::to_string(cap) + " shortest paths between " +
                                   std::to_string(u) + " and " + std::to_string(v));
    };
    struct Frame {
        int vertex;
        std::size_t next_pred;
    };
    std::vector<Frame> frames{{v, 0}};
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.vertex == u) {
            emit();
            frames.pop_back();
            stack.pop_back();
            continue;
        }
        const auto& preds = sssp.preds[f.vertex];
        if (f.next_pred < preds.size()) {
            int p = preds[f.next_pred++];
            stack.push_back(p);
            frames.push_back({p, 0});
        } else {
            frames.pop_back();
            stack.pop_back();
        }
    }
    return out;
}

} // namespace cgs
