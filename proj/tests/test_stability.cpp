#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <utility>
#include <vector>

#include "cgs/errors.hpp"
#include "cgs/graph.hpp"
#include "cgs/shortest_paths.hpp"
#include "cgs/stability.hpp"

using namespace cgs;

namespace {

Graph layered_graph(int layers, int width) {
    std::vector<std::pair<int, int>> edges;
    const int first = 1;
    for (int w = 0; w < width; ++w) edges.emplace_back(0, first + w);
    for (int l = 0; l + 1 < layers; ++l)
        for (int a = 0; a < width; ++a)
            for (int b = 0; b < width; ++b)
                edges.emplace_back(first + l * width + a, first + (l + 1) * width + b);
    const int last = first + layers * width;
    for (int w = 0; w < width; ++w) edges.emplace_back(first + (layers - 1) * width + w, last);
    return Graph::from_edges(last + 1, std::move(edges));
}

double pair_distance_square_sum(const ApspResult<double>& ap) {
    double s = 0.0;
    const int n = static_cast<int>(ap.sources.size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double d = ap.sources[u].dist[v];
            s += d * d;
        }
    return s;
}

} // namespace

TEST_CASE("single-path scores on small families") {
    {
        const Graph g = make_path(4);
        const auto s = scores_single_path(g, apsp(g));
        REQUIRE(s.scores == std::vector<double>{6.0, 8.0, 6.0});
        REQUIRE(s.strategy_tag == StrategyTag::single_path);
    }
    {
        const Graph g = make_star(5);
        const auto s = scores_single_path(g, apsp(g));
        for (double x : s.scores) REQUIRE(x == 7.0);
    }
    {
        const Graph g = make_complete(5);
        const auto s = scores_single_path(g, apsp(g));
        for (double x : s.scores) REQUIRE(x == 1.0);
    }
    {
        const Graph g = make_petersen();
        const auto s = scores_single_path(g, apsp(g));
        for (double x : s.scores) REQUIRE(x == 9.0);
    }
}

TEST_CASE("uniform scores on small families") {
    {
        const Graph g = make_cycle(4);
        const auto s = scores_uniform(g, apsp(g));
        for (double x : s.scores) REQUIRE(x == Catch::Approx(3.0).margin(1e-12));
    }
    {
        const Graph g = make_cycle(5);
        const auto s = scores_uniform(g, apsp(g));
        for (double x : s.scores) REQUIRE(x == Catch::Approx(5.0).margin(1e-12));
    }
    {
        // unique paths on a tree: uniform must coincide with single-path
        const Graph g = Graph::from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {5, 6}});
        const auto ap = apsp(g);
        const auto u = scores_uniform(g, ap);
        const auto s = scores_single_path(g, ap);
        for (int e = 0; e < g.edge_count(); ++e)
            REQUIRE(u.scores[e] == Catch::Approx(s.scores[e]).margin(1e-12));
    }
}

TEST_CASE("brute force agrees with the fast accumulations") {
    std::vector<Graph> graphs = {make_cycle(4), make_cycle(9),    make_path(6),
                                 make_star(7),  make_complete(5), make_petersen()};
    for (std::uint64_t seed : {31ULL, 32ULL, 33ULL}) graphs.push_back(make_erdos_renyi(11, 0.3, seed));

    for (const Graph& g : graphs) {
        const auto ap = apsp(g);
        const auto bu = scores_brute_force(g, ap, StrategyTag::uniform);
        const auto fu = scores_uniform(g, ap);
        const auto bs = scores_brute_force(g, ap, StrategyTag::single_path);
        const auto fs = scores_single_path(g, ap);
        REQUIRE(bu.strategy_tag == StrategyTag::brute_force);
        for (int e = 0; e < g.edge_count(); ++e) {
            REQUIRE(std::abs(bu.scores[e] - fu.scores[e]) <= 1e-10);
            REQUIRE(std::abs(bs.scores[e] - fs.scores[e]) <= 1e-10);
        }
    }
}

TEST_CASE("score sums and floors") {
    std::vector<Graph> graphs = {make_petersen(), make_path(8), make_star(9)};
    for (std::uint64_t seed : {41ULL, 42ULL}) graphs.push_back(make_erdos_renyi(13, 0.3, seed));

    for (const Graph& g : graphs) {
        const auto ap = apsp(g);
        const double expected = pair_distance_square_sum(ap);
        for (const auto& s : {scores_single_path(g, ap), scores_uniform(g, ap)}) {
            double total = 0.0;
            for (double x : s.scores) {
                REQUIRE(x >= 1.0 - 1e-12); // every edge serves at least its own endpoints
                total += x;
            }
            REQUIRE(total == Catch::Approx(expected).margin(1e-9));
        }
    }
}

TEST_CASE("bound values and argmax edges") {
    {
        const Graph g = make_petersen();
        const auto b = cgs_bound(g, scores_single_path(g, apsp(g)));
        REQUIRE(b.value == Catch::Approx(10.0 / 9.0).margin(1e-12));
        REQUIRE(b.argmax_edge == 0);
    }
    {
        const Graph g = make_path(4);
        const auto b = cgs_bound(g, scores_single_path(g, apsp(g)));
        REQUIRE(b.value == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(b.argmax_edge == 1);
    }
    {
        const Graph g = make_star(10);
        const auto b = cgs_bound(g, scores_uniform(g, apsp(g)));
        REQUIRE(b.value == Catch::Approx(10.0 / 17.0).margin(1e-12));
    }
}

TEST_CASE("custom path selections") {
    const Graph c4 = make_cycle(4);
    // route everything clockwise; scores become deliberately lopsided
    const std::vector<std::vector<int>> clockwise = {{0, 1}, {0, 1, 2}, {0, 3},
                                                     {1, 2}, {1, 2, 3}, {2, 3}};
    const auto s = scores_custom_paths(c4, clockwise);
    REQUIRE(s.strategy_tag == StrategyTag::custom);
    REQUIRE(s.scores[*c4.edge_id(0, 1)] == 3.0);
    REQUIRE(s.scores[*c4.edge_id(1, 2)] == 5.0);
    REQUIRE(s.scores[*c4.edge_id(2, 3)] == 3.0);
    REQUIRE(s.scores[*c4.edge_id(0, 3)] == 1.0);

    // non-shortest detours are allowed as long as the walk is a simple path
    const std::vector<std::vector<int>> detour = {{0, 1}, {0, 1, 2}, {0, 1, 2, 3},
                                                  {1, 2}, {1, 2, 3}, {2, 3}};
    const auto ds = scores_custom_paths(c4, detour);
    REQUIRE(ds.scores[*c4.edge_id(0, 3)] == 0.0);
    REQUIRE(ds.scores[*c4.edge_id(1, 2)] == 8.0);

    REQUIRE_THROWS_AS(scores_custom_paths(c4, {{0, 1}}), Error); // pairs missing
    REQUIRE_THROWS_AS(scores_custom_paths(c4, {{0, 1}, {0, 1, 2}, {0, 3}, {1, 2}, {1, 2, 3},
                                               {2, 3}, {3, 2}}),
                      Error); // pair covered twice
    REQUIRE_THROWS_AS(scores_custom_paths(c4, {{0, 2}, {0, 1, 2}, {0, 3}, {1, 2}, {1, 2, 3},
                                               {2, 3}}),
                      Error); // non-edge hop
    REQUIRE_THROWS_AS(scores_custom_paths(c4, {{0, 1, 0, 3}, {0, 1, 2}, {0, 1}, {1, 2},
                                               {1, 2, 3}, {2, 3}}),
                      Error); // repeated vertex
    REQUIRE_THROWS_AS(scores_custom_paths(c4, {{0}, {0, 1, 2}, {0, 3}, {1, 2}, {1, 2, 3}, {2, 3}}),
                      Error); // degenerate path
}

TEST_CASE("scores csv rendering") {
    const Graph g = make_path(4);
    const auto s = scores_single_path(g, apsp(g));
    REQUIRE(write_scores_csv(g, s) == "edge_id,u,v,score\n0,0,1,6\n1,1,2,8\n2,2,3,6\n");
}

TEST_CASE("path counting and the brute-force cap") {
    REQUIRE(total_shortest_path_count(apsp(make_cycle(4))) == 8.0);
    REQUIRE(total_shortest_path_count(apsp(make_petersen())) == 45.0);

    const Graph wide = layered_graph(10, 3); // 3^10 end-to-end geodesics
    const auto ap = apsp(wide);
    REQUIRE(total_shortest_path_count(ap) > kBruteForceCap);
    REQUIRE_THROWS_AS(scores_brute_force(wide, ap, StrategyTag::uniform), CapExceededError);

    REQUIRE_THROWS_AS(scores_brute_force(make_cycle(4), apsp(make_cycle(4)), StrategyTag::optimized),
                      Error);
}
