#include <doctest.h>

#include "chaselab/graphs.hpp"
#include "chaselab/parser.hpp"
#include "support.hpp"

#include <algorithm>

using namespace chaselab;
using namespace testsupport;

namespace {

Position pos(const char* p, int i) { return Position{Symbol(p), i}; }

} // namespace

TEST_SUITE("static-graphs") {

TEST_CASE("safe_cycle: special cycle, safe, R^2 the only affected position") {
    auto safe_cycle = data_constraints("safe_cycle.tgd");
    auto dep = dependency_graph(safe_cycle);
    CHECK(dep.special_edge_on_cycle().has_value());
    CHECK_FALSE(weakly_acyclic(safe_cycle));
    CHECK(to_string(affected_positions(safe_cycle)) == "{R^2}");
    auto prop = propagation_graph(safe_cycle);
    CHECK(prop.nodes() == PositionSet{pos("R", 2)});
    CHECK(prop.edges().empty());
    CHECK(safe(safe_cycle));
}

TEST_CASE("full TGDs have no special edges and no affected positions") {
    auto full = parse_constraints("a: R(x,y) -> S(y,x).\nb: S(x,y), S(y,z) -> R(x,z).");
    auto dep = dependency_graph(full);
    for (const auto& e : dep.edges()) CHECK_FALSE(e.special);
    CHECK(dep.has_edge(pos("R", 1), pos("S", 2), false));
    CHECK(weakly_acyclic(full));
    CHECK(affected_positions(full).empty());
    CHECK(propagation_graph(full).nodes().empty());
    CHECK(propagation_graph(full).edges().empty());
    CHECK(safe(full));
}

TEST_CASE("triangle: not weakly acyclic, not safe, propagation equals dependency") {
    auto triangle = data_constraints("triangle.tgd");
    auto dep = dependency_graph(triangle);
    CHECK(dep.special_edge_on_cycle().has_value());
    CHECK_FALSE(weakly_acyclic(triangle));
    CHECK_FALSE(safe(triangle));
    auto prop = propagation_graph(triangle);
    CHECK(prop.edges() == dep.edges());
    CHECK(prop.nodes() == dep.nodes());
}

TEST_CASE("the safe but unstratified pair") {
    CHECK(safe(data_constraints("safe_unstrat.tgd")));
    CHECK_FALSE(weakly_acyclic(data_constraints("safe_unstrat.tgd")));
}

TEST_CASE("affected positions of the two-constraint E/S set") {
    CHECK(to_string(affected_positions(data_constraints("es_pair.tgd"))) == "{E^1, E^2}");
}

TEST_CASE("empty sets and the full cycle of the counterexample") {
    CHECK(weakly_acyclic(ConstraintSet{}));
    CHECK(safe(ConstraintSet{}));
    auto sigma = data_constraints("strat_loop.tgd");
    CHECK(weakly_acyclic(sigma.subset({"a1", "a3", "a4"})));
    CHECK_FALSE(weakly_acyclic(sigma));
}

TEST_CASE("EGDs are ignored by the position graphs") {
    auto with_egd = parse_constraints("a: R(x) -> exists y: S(x,y).\ne: S(x,y), S(x,z) -> y = z.");
    CHECK(dependency_graph(with_egd).edges() == dependency_graph(with_egd.tgds_only()).edges());
    CHECK(affected_positions(with_egd) == PositionSet{pos("S", 2)});
}

TEST_CASE("empty-body TGDs contribute nodes without incoming edges") {
    auto s = parse_constraints("a: true -> exists x: S(x).");
    auto dep = dependency_graph(s);
    CHECK(dep.nodes().count(pos("S", 1)));
    CHECK(dep.edges().empty());
    CHECK(weakly_acyclic(s));
}

TEST_CASE("propagation is a subgraph of dependency; weak acyclicity implies safety") {
    Rng rng(31);
    GenShape shape;
    int wa = 0;
    for (int i = 0; i < 300; ++i) {
        auto sigma = random_set(rng, shape);
        CHECK(propagation_graph(sigma).is_subgraph_of(dependency_graph(sigma)));
        if (weakly_acyclic(sigma)) {
            ++wa;
            CHECK(safe(sigma));
        }
        if (safe(sigma))
            for (const auto& c : sigma) CHECK(safe(sigma.without({c.label()})));
        auto aff = affected_positions(sigma);
        for (const auto& c : sigma) {
            auto sub = affected_positions(sigma.without({c.label()}));
            CHECK(std::includes(aff.begin(), aff.end(), sub.begin(), sub.end()));
        }
    }
    CHECK(wa > 20);
}

TEST_CASE("strongly connected components in topological order") {
    std::vector<std::vector<int>> adj{{1}, {2}, {1, 3}, {}};
    auto comps = strongly_connected_components(adj);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<int>{0});
    auto mid = comps[1];
    std::sort(mid.begin(), mid.end());
    CHECK(mid == std::vector<int>{1, 2});
    CHECK(comps[2] == std::vector<int>{3});
}

TEST_CASE("constraint graph components and reachability") {
    ConstraintGraph g({"a", "b", "c", "d"});
    g.add_edge("a", "b");
    g.add_edge("b", "a");
    g.add_edge("b", "c");
    g.add_edge("d", "d");
    auto comps = g.components();
    REQUIRE(comps.size() == 3);
    auto cyc = g.cyclic_components();
    REQUIRE(cyc.size() == 2);
    CHECK(g.reachable_from("a") == std::set<std::string>{"a", "b", "c"});
    CHECK(g.reachable_from("c") == std::set<std::string>{"c"});
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = i + 1; j < comps.size(); ++j)
            for (const auto& x : comps[j])
                for (const auto& y : comps[i]) CHECK_FALSE(g.has_edge(x, y));
}

TEST_CASE("DOT output marks special edges") {
    auto dot = dependency_graph(data_constraints("safe_cycle.tgd")).to_dot("dep");
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("R^2") != std::string::npos);
    CHECK(dot.find("dashed") != std::string::npos);
    CHECK(dot_id("a b") == "\"a b\"");
}

} // TEST_SUITE
