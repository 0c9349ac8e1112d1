#include <doctest.h>

#include "chaselab/graphs.hpp"
#include "chaselab/guardedness.hpp"
#include "chaselab/hierarchy.hpp"
#include "chaselab/parser.hpp"
#include "support.hpp"

#include <algorithm>

using namespace chaselab;
using namespace testsupport;

TEST_SUITE("guardedness") {

TEST_CASE("the three-constraint set is not weakly guarded") {
    auto r = weakly_guarded(data_constraints("guard_gap.tgd"));
    CHECK_FALSE(r.holds);
    CHECK(r.violator == "a2");
    REQUIRE(r.guards.size() == 3);
    CHECK_FALSE(r.guards[1].has_value());
}

TEST_CASE("the three-constraint set under restricted guards: derived positions") {
    auto sigma = data_constraints("guard_gap.tgd");
    auto rs = minimal_restriction_system(sigma, 2);
    CHECK(rs.graph.edges() == std::set<std::pair<std::string, std::string>>{{"a1", "a2"}, {"a3", "a2"}});
    CHECK(to_string(rs.f) == "{R^1, R^2, S^1, S^2}");
    auto r = restrictedly_guarded(sigma);
    CHECK(r.basis == rs.f);
    CHECK_FALSE(r.holds);
    CHECK(r.violator == "a2");
}

TEST_CASE("trivially guarded sets") {
    auto full = parse_constraints("a: R(x,y), R(y,z) -> R(x,z).");
    CHECK(weakly_guarded(full).holds);
    CHECK(restrictedly_guarded(full).holds);
    auto single = parse_constraints("a: R(x,y) -> exists z: R(y,z).\nb: R(x,y) -> S(y).");
    auto w = weakly_guarded(single);
    CHECK(w.holds);
    REQUIRE(w.guards.size() == 2);
    CHECK(w.guards[0] == std::size_t(0));
    CHECK(restrictedly_guarded(ConstraintSet{}).holds);
    CHECK(weakly_guarded(ConstraintSet{}).holds);
}

TEST_CASE("first guard in body order") {
    auto s = parse_constraints("a: R(x,y), R(y,x), S(x) -> exists z: R(x,z).");
    auto w = weakly_guarded(s);
    CHECK(w.holds);
    CHECK(w.guards[0] == std::size_t(0));
}

TEST_CASE("EGDs are rejected") {
    auto s = parse_constraints("e: T(x,y), T(x,z) -> y = z.");
    CHECK_THROWS_AS(weakly_guarded(s), std::invalid_argument);
    CHECK_THROWS_AS(restrictedly_guarded(s), std::invalid_argument);
}

TEST_CASE("weak guards imply restricted guards; the basis stays inside aff") {
    Rng rng(1313);
    GenShape shape;
    shape.existential_p = 0.5;
    int weak = 0, only_restricted = 0;
    for (int i = 0; i < 300; ++i) {
        auto sigma = random_set(rng, shape);
        auto w = weakly_guarded(sigma);
        auto r = restrictedly_guarded(sigma);
        if (w.holds) {
            ++weak;
            CHECK(r.holds);
        } else if (r.holds) {
            ++only_restricted;
        }
        auto aff = affected_positions(sigma);
        CHECK(std::includes(aff.begin(), aff.end(), r.basis.begin(), r.basis.end()));
        CHECK(w.basis == aff);
    }
    CHECK(weak > 50);
    MESSAGE("restricted but not weak: " << only_restricted);
}

} // TEST_SUITE
