#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oct/constraint.hpp"
#include "oct/octagon.hpp"

using namespace oct;

TEST_CASE("constraint text round trip") {
    std::vector<OctConstraint> cs = {
        OctConstraint::upper(0, rat(1)),     OctConstraint::lower(1, rat(3, 2)),
        OctConstraint::diff(0, 1, rat(-2)),  OctConstraint::sum(0, 2, rat(7)),
        OctConstraint::neg_sum(1, 2, rat(0)),
    };
    std::string text = render_constraints(cs);
    CHECK(parse_constraints(text) == cs);
}

TEST_CASE("constraint parsing forms") {
    CHECK(parse_constraints("v0 <= 1") ==
          std::vector<OctConstraint>{OctConstraint::upper(0, rat(1))});
    CHECK(parse_constraints("v0 >= 3/2") ==
          std::vector<OctConstraint>{OctConstraint::lower(0, rat(3, 2))});
    CHECK(parse_constraints("-v0 <= 5") ==
          std::vector<OctConstraint>{OctConstraint::lower(0, rat(-5))});
    CHECK(parse_constraints("v0 - v1 <= -1/2") ==
          std::vector<OctConstraint>{OctConstraint::diff(0, 1, rat(-1, 2))});
    CHECK(parse_constraints("-v0 + v1 <= 2") ==
          std::vector<OctConstraint>{OctConstraint::diff(1, 0, rat(2))});
    CHECK(parse_constraints("-v2 - v1 <= 4") ==
          std::vector<OctConstraint>{OctConstraint::neg_sum(2, 1, rat(4))});
    CHECK(parse_constraints("# comment\n\nv0 <= 1\n").size() == 1);
    CHECK_THROWS_AS(parse_constraints("v0 < 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_constraints("v0 + v0 <= 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_constraints("v0 + v1 >= 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_constraints("w <= 1"), std::invalid_argument);
}

TEST_CASE("deterministic ordering puts unary first") {
    std::vector<OctConstraint> cs = {
        OctConstraint::sum(1, 2, rat(3)),
        OctConstraint::lower(2, rat(0)),
        OctConstraint::diff(0, 1, rat(1)),
        OctConstraint::upper(0, rat(4)),
    };
    std::sort(cs.begin(), cs.end(), constraint_order);
    CHECK(cs[0] == OctConstraint::upper(0, rat(4)));
    CHECK(cs[1] == OctConstraint::lower(2, rat(0)));
    CHECK(cs[2] == OctConstraint::diff(0, 1, rat(1)));
    CHECK(cs[3] == OctConstraint::sum(1, 2, rat(3)));
}

TEST_CASE("sum constructors canonicalize variable order") {
    CHECK(OctConstraint::sum(2, 0, rat(1)) == OctConstraint::sum(0, 2, rat(1)));
    CHECK(OctConstraint::neg_sum(2, 0, rat(1)) == OctConstraint::neg_sum(0, 2, rat(1)));
}
