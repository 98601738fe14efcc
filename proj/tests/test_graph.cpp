#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "cgs/errors.hpp"
#include "cgs/graph.hpp"

using namespace cgs;

TEST_CASE("from_edges builds a normalized edge list") {
    const Graph g = Graph::from_edges(4, {{2, 0}, {0, 1}, {3, 1}});
    REQUIRE(g.vertex_count() == 4);
    REQUIRE(g.edge_count() == 3);
    // ids follow insertion order, endpoints normalized to u < v
    REQUIRE(g.edges()[0] == std::pair<int, int>{0, 2});
    REQUIRE(g.edges()[1] == std::pair<int, int>{0, 1});
    REQUIRE(g.edges()[2] == std::pair<int, int>{1, 3});
    REQUIRE(g.edge_id(2, 0).value() == 0);
    REQUIRE(g.edge_id(0, 2).value() == 0);
    REQUIRE_FALSE(g.edge_id(2, 3).has_value());
    REQUIRE_FALSE(g.edge_id(1, 1).has_value());
}

TEST_CASE("from_edges rejects bad input") {
    REQUIRE_THROWS_AS(Graph::from_edges(1, {}), TooSmallError);
    REQUIRE_THROWS_AS(Graph::from_edges(3, {{1, 1}}), SelfLoopError);
    REQUIRE_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), Error); // duplicate
    REQUIRE_THROWS_AS(Graph::from_edges(3, {{0, 3}}), Error);         // out of range
}

TEST_CASE("neighbors are ascending and carry edge ids") {
    const Graph g = Graph::from_edges(4, {{0, 3}, {0, 1}, {0, 2}, {1, 2}});
    const auto nb = g.neighbors(0);
    REQUIRE(nb.size() == 3);
    REQUIRE(nb[0].vertex == 1);
    REQUIRE(nb[1].vertex == 2);
    REQUIRE(nb[2].vertex == 3);
    REQUIRE(nb[2].edge == 0);
    REQUIRE(g.degree(0) == 3);
    REQUIRE(g.degree(3) == 1);
}

TEST_CASE("named generators") {
    REQUIRE(make_complete(5).edge_count() == 10);
    const Graph p4 = make_path(4);
    REQUIRE(p4.edge_count() == 3);
    REQUIRE(p4.edge_id(2, 3).has_value());
    const Graph c3 = make_cycle(3);
    REQUIRE(c3.edge_count() == 3);
    REQUIRE_THROWS_AS(make_cycle(2), Error);
    const Graph s5 = make_star(5);
    REQUIRE(s5.degree(0) == 4);
    REQUIRE(s5.degree(3) == 1);

    const Graph pet = make_petersen();
    REQUIRE(pet.vertex_count() == 10);
    REQUIRE(pet.edge_count() == 15);
    for (int v = 0; v < 10; ++v) REQUIRE(pet.degree(v) == 3);
    // inner pentagram steps by two
    REQUIRE(pet.edge_id(5, 7).has_value());
    REQUIRE(pet.edge_id(6, 8).has_value());
    REQUIRE_FALSE(pet.edge_id(5, 6).has_value());
    // spokes
    for (int i = 0; i < 5; ++i) REQUIRE(pet.edge_id(i, i + 5).has_value());
}

TEST_CASE("connectivity probes") {
    REQUIRE(is_connected(make_path(6)));
    const Graph split = Graph::from_edges(4, {{0, 1}, {2, 3}});
    REQUIRE_FALSE(is_connected(split));
    REQUIRE(find_unreachable(split).value() == 2);
    REQUIRE_FALSE(find_unreachable(make_cycle(5)).has_value());
}

TEST_CASE("erdos-renyi sampler is deterministic and connected") {
    const Graph a = make_erdos_renyi(16, 0.3, 42);
    const Graph b = make_erdos_renyi(16, 0.3, 42);
    REQUIRE(a.edges() == b.edges());
    REQUIRE(is_connected(a));
    const Graph c = make_erdos_renyi(16, 0.3, 43);
    REQUIRE(a.edges() != c.edges());

    const Graph full = make_erdos_renyi(8, 1.0, 0);
    REQUIRE(full.edge_count() == 28);

    REQUIRE_THROWS_AS(make_erdos_renyi(10, 0.0, 1), Error);
    REQUIRE_THROWS_AS(make_erdos_renyi(10, 1.5, 1), Error);
    REQUIRE_THROWS_AS(make_erdos_renyi(1, 0.5, 1), TooSmallError);
    // 50 vertices at p = 0.001 essentially never come out connected
    REQUIRE_THROWS_AS(make_erdos_renyi(50, 0.001, 7), DisconnectedSampleError);
}

TEST_CASE("family lookup and generation") {
    REQUIRE(family_from_name("petersen").value() == FamilyKind::petersen);
    REQUIRE_FALSE(family_from_name("torus").has_value());
    GraphFamily fam;
    fam.kind = FamilyKind::cycle;
    fam.n = 7;
    REQUIRE(generate(fam).edge_count() == 7);
    fam.kind = FamilyKind::petersen;
    fam.n = 3; // ignored
    REQUIRE(generate(fam).vertex_count() == 10);
}

TEST_CASE("edge-list parsing") {
    const auto r = parse_edge_list("a b\nb c\n\n# comment\nc a\n");
    REQUIRE(r.graph.vertex_count() == 3);
    REQUIRE(r.graph.edge_count() == 3);
    REQUIRE(r.labels == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(r.duplicates_collapsed == 0);

    const auto dup = parse_edge_list("0 1\n1 0\n0 1\n1 2\n");
    REQUIRE(dup.graph.edge_count() == 2);
    REQUIRE(dup.duplicates_collapsed == 2);

    try {
        parse_edge_list("a b\nc\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        REQUIRE(e.line() == 2);
    }
    REQUIRE_THROWS_AS(parse_edge_list("a b\nc c\n"), SelfLoopError);
    REQUIRE_THROWS_AS(parse_edge_list("a b c\n"), ParseError);
    REQUIRE_THROWS_AS(parse_edge_list("# nothing\n"), TooSmallError);
}

TEST_CASE("serialization round-trips and sorts") {
    const Graph g = Graph::from_edges(4, {{3, 2}, {0, 2}, {0, 1}});
    REQUIRE(serialize_edge_list(g) == "0 1\n0 2\n2 3\n");
    const auto back = parse_edge_list(serialize_edge_list(g));
    auto edges = back.graph.edges();
    std::sort(edges.begin(), edges.end());
    REQUIRE(edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {2, 3}});
}
