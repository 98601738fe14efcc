#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <utility>
#include <vector>

#include "cgs/errors.hpp"
#include "cgs/graph.hpp"
#include "cgs/shortest_paths.hpp"
#include "cgs/spectral.hpp"
#include "cgs/stability.hpp"
#include "cgs/strategy.hpp"

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

PairFlow& pair_flow(PathStrategy& s, int u, int v) {
    for (auto& pf : s.pairs)
        if (pf.u == u && pf.v == v) return pf;
    FAIL("pair not found");
    return s.pairs.front();
}

/// All-clockwise routing on C4: every pair walks in ascending vertex order
/// (pair {0,3} uses its own edge). Scores come out {3,5,3,1}.
PathStrategy clockwise_c4() {
    PathStrategy s;
    s.pairs.push_back({0, 1, {{0, 1, 1.0}}});
    s.pairs.push_back({0, 2, {{0, 1, 1.0}, {1, 2, 1.0}}});
    s.pairs.push_back({0, 3, {{0, 3, 1.0}}});
    s.pairs.push_back({1, 2, {{1, 2, 1.0}}});
    s.pairs.push_back({1, 3, {{1, 2, 1.0}, {2, 3, 1.0}}});
    s.pairs.push_back({2, 3, {{2, 3, 1.0}}});
    return s;
}

} // namespace

TEST_CASE("uniform strategy splits C4 antipodal pairs evenly") {
    const Graph g = make_cycle(4);
    const auto ap = apsp(g);
    auto strat = uniform_strategy(g, ap);
    validate_strategy(g, ap, strat);

    const auto& pf = pair_flow(strat, 0, 2);
    REQUIRE(pf.edges.size() == 4);
    for (const auto& fe : pf.edges) REQUIRE(fe.flow == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("flow-form strategies reproduce the accumulation scores") {
    std::vector<Graph> graphs = {make_cycle(4), make_petersen(), make_path(6), make_star(6)};
    for (std::uint64_t seed : {51ULL, 52ULL, 53ULL}) graphs.push_back(make_erdos_renyi(12, 0.3, seed));

    for (const Graph& g : graphs) {
        const auto ap = apsp(g);
        const auto su = strategy_scores(g, ap, uniform_strategy(g, ap), StrategyTag::uniform);
        const auto fu = scores_uniform(g, ap);
        const auto ss = strategy_scores(g, ap, single_path_strategy(g, ap), StrategyTag::single_path);
        const auto fs = scores_single_path(g, ap);
        for (int e = 0; e < g.edge_count(); ++e) {
            REQUIRE(std::abs(su.scores[e] - fu.scores[e]) <= 1e-12);
            REQUIRE(std::abs(ss.scores[e] - fs.scores[e]) <= 1e-12);
        }
    }
}

TEST_CASE("validation rejects malformed strategies") {
    const Graph g = make_cycle(4);
    const auto ap = apsp(g);
    const auto good = uniform_strategy(g, ap);
    validate_strategy(g, ap, good);

    {
        auto s = good;
        s.pairs.pop_back();
        REQUIRE_THROWS_AS(validate_strategy(g, ap, s), InvalidFlowError);
    }
    {
        auto s = good;
        s.pairs.back() = s.pairs.front(); // right count, duplicated pair
        REQUIRE_THROWS_AS(validate_strategy(g, ap, s), InvalidFlowError);
    }
    {
        auto s = good;
        pair_flow(s, 0, 1).edges[0].flow = -0.5;
        REQUIRE_THROWS_AS(validate_strategy(g, ap, s), InvalidFlowError);
    }
    {
        auto s = good;
        pair_flow(s, 0, 1).edges.push_back({0, 2, 0.0}); // C4 has no chord
        REQUIRE_THROWS_AS(validate_strategy(g, ap, s), InvalidFlowError);
    }
    {
        auto s = good;
        pair_flow(s, 0, 1).edges.push_back({1, 0, 0.0}); // real edge, wrong direction
        REQUIRE_THROWS_AS(validate_strategy(g, ap, s), InvalidFlowError);
    }
    {
        auto s = good;
        auto& pf = pair_flow(s, 0, 2);
        for (auto& fe : pf.edges) {
            if (fe.from == 0 && fe.to == 1) fe.flow = 0.7;
            if (fe.from == 0 && fe.to == 3) fe.flow = 0.3;
        } // downstream arcs still 0.5/0.5: vertex 1 leaks 0.2
        REQUIRE_THROWS_AS(validate_strategy(g, ap, s), InvalidFlowError);
    }
}

TEST_CASE("brute-force flow decomposition") {
    std::vector<Graph> graphs = {make_cycle(4), make_cycle(6), make_petersen()};
    for (std::uint64_t seed : {61ULL, 62ULL}) graphs.push_back(make_erdos_renyi(10, 0.35, seed));
    for (const Graph& g : graphs) {
        const auto ap = apsp(g);
        for (const auto& strat : {uniform_strategy(g, ap), single_path_strategy(g, ap)}) {
            const auto direct = strategy_scores(g, ap, strat);
            const auto brute = scores_brute_force(g, ap, strat);
            for (int e = 0; e < g.edge_count(); ++e)
                REQUIRE(std::abs(direct.scores[e] - brute.scores[e]) <= 1e-10);
        }
    }

    const Graph c4 = make_cycle(4);
    const auto ap = apsp(c4);
    const auto s = scores_brute_force(c4, ap, clockwise_c4());
    REQUIRE(s.scores[*c4.edge_id(0, 1)] == Catch::Approx(3.0).margin(1e-12));
    REQUIRE(s.scores[*c4.edge_id(1, 2)] == Catch::Approx(5.0).margin(1e-12));
    REQUIRE(s.scores[*c4.edge_id(2, 3)] == Catch::Approx(3.0).margin(1e-12));
    REQUIRE(s.scores[*c4.edge_id(0, 3)] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("optimizer reaches the known optima") {
    const std::vector<std::pair<Graph, double>> cases = {
        {make_cycle(4), 3.0},  {make_complete(5), 1.0}, {make_complete(10), 1.0},
        {make_cycle(5), 5.0},  {make_petersen(), 9.0},  {make_path(5), 15.0},
    };
    for (const auto& [g, expected] : cases) {
        const auto ap = apsp(g);
        const auto res = optimize_strategy(g, ap);
        REQUIRE(res.scores.max_score() == Catch::Approx(expected).margin(1e-6));
        REQUIRE(res.converged);
    }
}

TEST_CASE("optimizer output is a valid strategy that beats the baselines") {
    std::vector<Graph> graphs = {make_petersen()};
    for (std::uint64_t seed : {71ULL, 72ULL, 73ULL, 74ULL})
        graphs.push_back(make_erdos_renyi(13, 0.3, seed));

    for (const Graph& g : graphs) {
        const auto ap = apsp(g);
        const auto res = optimize_strategy(g, ap);
        validate_strategy(g, ap, res.strategy);
        REQUIRE(res.passes <= 200);

        const auto rescored = strategy_scores(g, ap, res.strategy);
        for (int e = 0; e < g.edge_count(); ++e)
            REQUIRE(res.scores.scores[e] == Catch::Approx(rescored.scores[e]).margin(1e-12));

        const double opt = res.scores.max_score();
        REQUIRE(opt <= scores_uniform(g, ap).max_score() + 1e-12);
        REQUIRE(opt <= scores_single_path(g, ap).max_score() + 1e-12);
    }
}

TEST_CASE("trees leave no freedom") {
    const Graph g = Graph::from_edges(8, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {5, 6}, {5, 7}});
    const auto ap = apsp(g);
    const auto res = optimize_strategy(g, ap);
    REQUIRE(res.passes == 0);
    REQUIRE(res.converged);
    const auto single = scores_single_path(g, ap);
    for (int e = 0; e < g.edge_count(); ++e)
        REQUIRE(res.scores.scores[e] == Catch::Approx(single.scores[e]).margin(1e-12));
}

TEST_CASE("lp oracle on closed-form instances") {
    const std::vector<std::pair<Graph, double>> cases = {
        {make_cycle(4), 3.0}, {make_complete(4), 1.0}, {make_path(5), 15.0},
        {make_cycle(9), 30.0}, {make_star(6), 9.0},    {make_petersen(), 9.0},
    };
    for (const auto& [g, expected] : cases)
        REQUIRE(lp_oracle_small(g, apsp(g)) == Catch::Approx(expected).margin(1e-7));

    const Graph wide = layered_graph(10, 3);
    REQUIRE_THROWS_AS(lp_oracle_small(wide, apsp(wide)), CapExceededError);
}

TEST_CASE("optimizer lands within a percent of the exact LP") {
    for (std::uint64_t seed = 81; seed < 91; ++seed) {
        const Graph g = make_erdos_renyi(11, 0.35, seed);
        const auto ap = apsp(g);
        const double exact = lp_oracle_small(g, ap);
        const auto res = optimize_strategy(g, ap, 1e-8, 600);
        REQUIRE(res.scores.max_score() >= exact - 1e-9);
        REQUIRE(res.scores.max_score() <= exact * 1.01);
    }
}

TEST_CASE("optimized bound never crosses lambda2") {
    std::vector<Graph> graphs = {make_petersen(), make_cycle(8), make_path(7)};
    for (std::uint64_t seed = 101; seed < 113; ++seed)
        graphs.push_back(make_erdos_renyi(4 + static_cast<int>(seed % 11), 0.4, seed));

    for (const Graph& g : graphs) {
        const auto ap = apsp(g);
        const auto res = optimize_strategy(g, ap);
        const double bound = cgs_bound(g, res.scores).value;
        REQUIRE(bound <= eigen_lambda2(g).lambda2() + 1e-9);
    }
}

TEST_CASE("strategy csv rendering") {
    const Graph g = make_path(3);
    const auto strat = uniform_strategy(g, apsp(g));
    REQUIRE(write_strategy_csv(strat) ==
            "u,v,dag_edge_u,dag_edge_v,flow\n"
            "0,1,0,1,1\n"
            "0,2,0,1,1\n"
            "0,2,1,2,1\n"
            "1,2,1,2,1\n");
}
