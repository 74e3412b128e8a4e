#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfcat/scalar.hpp"

using mfcat::Scalar;

TEST_CASE("field axioms on samples") {
    Scalar a = Scalar::of_fraction(3, 4) + Scalar::i() * Scalar(2);
    Scalar b(Scalar::of_fraction(-1, 3));
    Scalar c = Scalar(5) - Scalar::i();

    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a / c) * c == a);
    CHECK(a - a == Scalar(0));
}

TEST_CASE("i squared is minus one") {
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
}

TEST_CASE("exact fractions stay reduced") {
    Scalar x = Scalar::of_fraction(2, 6);
    CHECK(x == Scalar::of_fraction(1, 3));
    CHECK(x.str() == "1/3");
    Scalar y = Scalar::of_fraction(1, 3) + Scalar::of_fraction(1, 6);
    CHECK(y == Scalar::of_fraction(1, 2));
}

TEST_CASE("division by conjugate") {
    Scalar z(mpq_class(1), mpq_class(2));   // 1 + 2i
    Scalar inv = z.inv();
    CHECK(z * inv == Scalar(1));
    CHECK_THROWS(Scalar(0).inv());
}

TEST_CASE("printing") {
    CHECK(Scalar(0).str() == "0");
    CHECK(Scalar::i().str() == "i");
    CHECK((-Scalar::i()).str() == "-i");
    CHECK((Scalar(2) + Scalar::i() * Scalar(3)).str() == "2+3*i");
    CHECK((Scalar(2) - Scalar::i() * Scalar(3)).str() == "2-3*i");
}
