#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfcat/groebner.hpp"
#include "mfcat/parse.hpp"

#include <random>

using namespace mfcat;

namespace {

std::vector<Poly> parse_all(const std::vector<std::string>& ss, const RingPtr& r) {
    std::vector<Poly> out;
    for (auto& s : ss) out.push_back(parse_poly(s, r));
    return out;
}

// Independent Buchberger S-pair oracle: every S-polynomial of the basis
// reduces to zero and every generator reduces to zero.
bool is_groebner_for(const std::vector<Poly>& gb, const std::vector<Poly>& gens,
                     const MonomialOrder& ord) {
    for (auto& g : gens)
        if (!poly_reduce(g, gb, ord).is_zero()) return false;
    for (size_t i = 0; i < gb.size(); ++i)
        for (size_t j = i + 1; j < gb.size(); ++j) {
            auto& li = gb[i].leading_term(ord);
            auto& lj = gb[j].leading_term(ord);
            Monomial l = Monomial::lcm(li.mono, lj.mono);
            Poly s = gb[i].mul_term(l / li.mono, Scalar(1) / li.coeff) -
                     gb[j].mul_term(l / lj.mono, Scalar(1) / lj.coeff);
            if (!poly_reduce(s, gb, ord).is_zero()) return false;
        }
    return true;
}

} // namespace

TEST_CASE("single generator") {
    auto r = Ring::of_names({"x", "y"});
    auto I = IdealGB::make(parse_all({"x"}, r), r);
    REQUIRE(I.basis().size() == 1);
    CHECK(I.basis()[0] == parse_poly("x", r));
}

TEST_CASE("x^2, xy is already a GB (S-pair oracle)") {
    auto r = Ring::of_names({"x", "y"});
    auto gens = parse_all({"x^2", "x*y"}, r);
    auto I = IdealGB::make(gens, r);
    CHECK(is_groebner_for(I.basis(), gens, I.order()));
    REQUIRE(I.basis().size() == 2);
    CHECK(I.basis()[0] == parse_poly("x*y", r));
    CHECK(I.basis()[1] == parse_poly("x^2", r));
}

TEST_CASE("substitution oracle: {y - x^2, x} collapses to {x, y}") {
    auto r = Ring::of_names({"x", "y"});
    auto I = IdealGB::make(parse_all({"y-x^2", "x"}, r), r);
    REQUIRE(I.basis().size() == 2);
    CHECK(I.contains(parse_poly("x", r)));
    CHECK(I.contains(parse_poly("y", r)));
    CHECK_FALSE(I.contains(parse_poly("1", r)));
}

TEST_CASE("normal forms") {
    auto r = Ring::of_names({"x", "y"});
    auto I = IdealGB::make(parse_all({"x^2", "x*y"}, r), r);
    CHECK(I.normal_form(parse_poly("x^2*y", r)).is_zero());

    auto J = IdealGB::make(parse_all({"x"}, r), r);
    CHECK(J.normal_form(parse_poly("(x+y)^2", r)) == parse_poly("y^2", r));

    auto rx = Ring::of_names({"x"});
    auto K = IdealGB::make({parse_poly("x-1", rx)}, rx);
    CHECK(K.normal_form(parse_poly("1", rx)) == parse_poly("1", rx));
}

TEST_CASE("groebner is a fixpoint of itself") {
    auto r = Ring::of_names({"x", "y", "z"});
    auto gens = parse_all({"x*y - z^2", "y^2 - x*z", "x^2*z - y"}, r);
    auto I = IdealGB::make(gens, r);
    auto J = IdealGB::make(I.basis(), r);
    CHECK(I.basis() == J.basis());
    CHECK(is_groebner_for(I.basis(), gens, I.order()));
}

TEST_CASE("membership of products of generators") {
    auto r = Ring::of_names({"x", "y"});
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> c(-3, 3);
    auto gens = parse_all({"x^2 - y", "x*y + x"}, r);
    auto I = IdealGB::make(gens, r);
    for (int it = 0; it < 20; ++it) {
        std::vector<Poly::Term> ts;
        for (int k = 0; k < 3; ++k) {
            Monomial m(2);
            m[0] = std::abs(c(rng)) % 3;
            m[1] = std::abs(c(rng)) % 3;
            ts.push_back({m, Scalar(c(rng))});
        }
        Poly g = Poly::from_terms(r, std::move(ts));
        CHECK(I.normal_form(g * gens[it % 2]).is_zero());
    }
}

TEST_CASE("elimination: direct substitution case") {
    auto r = Ring::of_names({"x1", "p1", "x2", "p2"});
    auto I = IdealGB::make(parse_all({"p1-2*x1", "x2-x1", "p2-p1"}, r), r);
    auto E = eliminate(I, {"x1", "p1"});
    REQUIRE(E.basis().size() == 1);
    CHECK(E.contains(parse_poly("p2-2*x2", E.ring())));
    auto J = IdealGB::make({parse_poly("p2-2*x2", E.ring())}, E.ring());
    for (auto& g : E.basis()) CHECK(J.contains(g));
}

TEST_CASE("elimination: twisted cubic resultant oracle") {
    auto r = Ring::of_names({"x", "y", "z"});
    auto I = IdealGB::make(parse_all({"y-x^2", "z-x^3"}, r), r);
    auto E = eliminate(I, {"x"});
    CHECK(E.contains(parse_poly("z^2-y^3", E.ring())));
    // everything eliminated is still in the original ideal
    for (auto& g : E.basis())
        CHECK(I.contains(g.mapped_to(r)));
}

TEST_CASE("elimination of the whole ideal") {
    auto r = Ring::of_names({"x"});
    auto I = IdealGB::make(parse_all({"x"}, r), r);
    auto E = eliminate(I, {"x"});
    CHECK(E.is_zero_ideal());
}

TEST_CASE("quotient dimensions") {
    auto r = Ring::of_names({"x", "y"});
    CHECK(IdealGB::make(parse_all({"x", "y"}, r), r).quotient_dimension() == 1);
    CHECK(IdealGB::make(parse_all({"y"}, r), r).quotient_dimension() == -1);
    auto rx = Ring::of_names({"x"});
    CHECK(IdealGB::make({parse_poly("x^2", rx)}, rx).quotient_dimension() == 2);
}

TEST_CASE("random ideals satisfy the S-pair oracle") {
    auto r = Ring::of_names({"x", "y"});
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int it = 0; it < 10; ++it) {
        std::vector<Poly> gens;
        for (int g = 0; g < 2; ++g) {
            std::vector<Poly::Term> ts;
            for (int k = 0; k < 3; ++k) {
                Monomial m(2);
                m[0] = std::abs(c(rng));
                m[1] = std::abs(c(rng));
                ts.push_back({m, Scalar(c(rng))});
            }
            gens.push_back(Poly::from_terms(r, std::move(ts)));
        }
        auto I = IdealGB::make(gens, r);
        CHECK(is_groebner_for(I.basis(), gens, I.order()));
    }
}
