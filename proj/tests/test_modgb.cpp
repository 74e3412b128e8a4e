#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfcat/modgb.hpp"
#include "mfcat/parse.hpp"

using namespace mfcat;

TEST_CASE("syzygy of (x, y) is the Koszul relation") {
    auto r = Ring::of_names({"x", "y"});
    auto gens = std::vector<Poly>{parse_poly("x", r), parse_poly("y", r)};
    FPModule syz = syzygy_matrix(gens, r);
    REQUIRE(syz.rank == 2);
    REQUIRE(syz.relations.size() == 1);
    // every syzygy column annihilates the generators
    for (auto& s : syz.relations) {
        Poly dot = Poly::zero(r);
        for (size_t k = 0; k < gens.size(); ++k) dot += s[k] * gens[k];
        CHECK(dot.is_zero());
    }
    // and (y, -x) lies in the syzygy span
    ModVec target{parse_poly("y", r), parse_poly("-x", r)};
    auto lift = lift_through_columns(syz.relations, target, r, 2);
    CHECK(lift.has_value());
}

TEST_CASE("syzygy of a single regular element is zero") {
    auto r = Ring::of_names({"x"});
    FPModule syz = syzygy_matrix({parse_poly("x", r)}, r);
    CHECK(syz.relations.empty());
}

TEST_CASE("syzygy of (x, x) contains (1, -1)") {
    auto r = Ring::of_names({"x"});
    FPModule syz = syzygy_matrix({parse_poly("x", r), parse_poly("x", r)}, r);
    REQUIRE(syz.relations.size() == 1);
    ModVec target{parse_poly("1", r), parse_poly("-1", r)};
    auto lift = lift_through_columns(syz.relations, target, r, 2);
    CHECK(lift.has_value());
}

TEST_CASE("completeness via module GB: syzygies of (x^2, xy, y^2)") {
    auto r = Ring::of_names({"x", "y"});
    std::vector<Poly> gens{parse_poly("x^2", r), parse_poly("x*y", r), parse_poly("y^2", r)};
    FPModule syz = syzygy_matrix(gens, r);
    for (auto& s : syz.relations) {
        Poly dot = Poly::zero(r);
        for (size_t k = 0; k < 3; ++k) dot += s[k] * gens[k];
        CHECK(dot.is_zero());
    }
    // known syzygies must be liftable through the computed ones
    ModVec s1{parse_poly("y", r), parse_poly("-x", r), parse_poly("0", r)};
    ModVec s2{parse_poly("0", r), parse_poly("y", r), parse_poly("-x", r)};
    CHECK(lift_through_columns(syz.relations, s1, r, 3).has_value());
    CHECK(lift_through_columns(syz.relations, s2, r, 3).has_value());
}

TEST_CASE("scalar dimension of quotients") {
    auto r = Ring::of_names({"x", "y"});
    CHECK(scalar_dimension(FPModule::quotient_by_ideal(r, {parse_poly("x", r), parse_poly("y", r)})) == 1);
    CHECK(scalar_dimension(FPModule::quotient_by_ideal(r, {parse_poly("y", r)})) == -1);
    auto rx = Ring::of_names({"x"});
    CHECK(scalar_dimension(FPModule::quotient_by_ideal(rx, {parse_poly("x^2", rx)})) == 2);
}

TEST_CASE("scalar dimension over the empty ring is a vector-space rank") {
    auto r0 = Ring::make({});
    FPModule m;
    m.ring = r0;
    m.rank = 3;
    m.grading = {0, 0, 0};
    // one scalar relation kills one generator
    m.relations.push_back({Poly::constant(r0, Scalar(1)), Poly::constant(r0, Scalar(-1)),
                           Poly::zero(r0)});
    CHECK(scalar_dimension(m) == 2);
}

TEST_CASE("lift fails outside the span") {
    auto r = Ring::of_names({"x"});
    std::vector<ModVec> cols{{parse_poly("x", r)}};
    ModVec target{parse_poly("1", r)};
    CHECK_FALSE(lift_through_columns(cols, target, r, 1).has_value());
}

TEST_CASE("free module over nonempty ring has infinite dimension") {
    auto r = Ring::of_names({"x"});
    FPModule m;
    m.ring = r;
    m.rank = 1;
    m.grading = {0};
    CHECK(scalar_dimension(m) == -1);
}
