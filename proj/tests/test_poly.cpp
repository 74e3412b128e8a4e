#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfcat/parse.hpp"
#include "mfcat/poly.hpp"

#include <random>

using namespace mfcat;

namespace {
RingPtr xy() { return Ring::of_names({"x", "y"}); }

Poly random_poly(const RingPtr& ring, std::mt19937& rng, int max_deg = 3, int nterms = 4) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<Poly::Term> ts;
    for (int k = 0; k < nterms; ++k) {
        Monomial m(ring->size());
        for (size_t i = 0; i < ring->size(); ++i) m[i] = deg(rng);
        ts.push_back({m, Scalar(coeff(rng))});
    }
    return Poly::from_terms(ring, std::move(ts));
}
} // namespace

TEST_CASE("parse identity read-back") {
    auto r = xy();
    Poly p = parse_poly("x^2+y^2", r);
    CHECK(p == Poly::var(r, "x") * Poly::var(r, "x") + Poly::var(r, "y") * Poly::var(r, "y"));
}

TEST_CASE("parse distributes products") {
    auto r = xy();
    CHECK(parse_poly("(x+y)*(x-y)", r) == parse_poly("x^2-y^2", r));
}

TEST_CASE("i*i is -1") {
    auto r = xy();
    CHECK(parse_poly("i*i", r) == Poly::constant(r, Scalar(-1)));
}

TEST_CASE("parse errors report position") {
    auto r = xy();
    CHECK_THROWS_AS(parse_poly("x + z", r), ParseError);
    CHECK_THROWS_AS(parse_poly("x + ", r), ParseError);
    CHECK_THROWS_AS(parse_poly("(x", r), ParseError);
    try {
        parse_poly("x + z", r);
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("ring algebra laws on random polynomials") {
    auto r = xy();
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        Poly p = random_poly(r, rng), q = random_poly(r, rng), s = random_poly(r, rng);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p + q) * s == p * s + q * s);
        CHECK((p * q) * s == p * (q * s));
    }
}

TEST_CASE("derivatives") {
    auto r = xy();
    CHECK(parse_poly("x^2*y", r).derivative("x") == parse_poly("2*x*y", r));
    CHECK(parse_poly("x^2", r).derivative("y").is_zero());
    CHECK(parse_poly("x^3-3*x", r).derivative("x") == parse_poly("3*x^2-3", r));
}

TEST_CASE("print-parse round trip is the identity") {
    auto r = Ring::of_names({"x", "y", "x'"});
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int it = 0; it < 60; ++it) {
        std::vector<Poly::Term> ts;
        for (int k = 0; k < 5; ++k) {
            Monomial m(3);
            for (size_t i = 0; i < 3; ++i) {
                int e = coeff(rng);
                m[i] = e < 0 ? 0 : e;
            }
            ts.push_back({m, Scalar(mpq_class(coeff(rng)), mpq_class(coeff(rng)))});
        }
        Poly p = Poly::from_terms(r, std::move(ts));
        CHECK(parse_poly(p.str(), r) == p);
    }
}

TEST_CASE("substitution") {
    auto r = Ring::of_names({"x", "y"});
    auto rx = Ring::of_names({"x"});
    Poly p = parse_poly("x^2 + x*y + y^2", r);
    Poly val = parse_poly("x", rx);
    auto ix = *r->index_of("y");
    CHECK(p.substitute(ix, val, rx) == parse_poly("3*x^2", rx));
}

TEST_CASE("renaming into an extended ring") {
    auto rx = Ring::of_names({"x"});
    auto rxy = Ring::of_names({"x", "x'"});
    Poly p = parse_poly("x^2+1", rx);
    Poly q = p.renamed([](const std::string& s) { return s + "'"; }, rxy);
    CHECK(q == parse_poly("x'^2+1", rxy));
}
