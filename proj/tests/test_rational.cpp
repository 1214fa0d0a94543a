#include "doctest.h"

#include <random>

#include "lamina/rational.hpp"

using lamina::GeometricTail;
using lamina::Rational;
using lamina::sumGeometricTail;

TEST_CASE("rational basics and canonical form") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(1, -3).str() == "-1/3");
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational::parse("3/16") == Rational(3, 16));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("x/y"), std::domain_error);
}

TEST_CASE("comparison agrees with cross multiplication") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
    for (int t = 0; t < 2000; ++t) {
        long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        Rational x(a, b), y(c, d);
        bool lt = a * d < c * b;
        CHECK((x < y) == lt);
    }
}

TEST_CASE("geometric tail closed form") {
    CHECK(sumGeometricTail({Rational(1, 16), Rational(1, 2)}) == Rational(1, 8));
    CHECK(sumGeometricTail({Rational(0), Rational(1, 2)}) == Rational(0));
    CHECK(sumGeometricTail({Rational(1, 2), Rational(1, 4)}) == Rational(2, 3));
    CHECK_THROWS_AS(sumGeometricTail({Rational(1), Rational(1)}), std::domain_error);
    CHECK_THROWS_AS(sumGeometricTail({Rational(1), Rational(-3, 2)}), std::domain_error);
}

TEST_CASE("tail equals partial sum plus exact remainder") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    for (int t = 0; t < 200; ++t) {
        Rational a(num(rng), den(rng));
        Rational r(num(rng), 10 + den(rng));  // |r| < 1
        int N = 1 + (t % 64);
        Rational partial(0), term = a;
        for (int i = 0; i < N; ++i) {
            partial += term;
            term *= r;
        }
        // remaining tail starts at a*r^N
        Rational whole = sumGeometricTail({a, r});
        Rational tail = sumGeometricTail({term, r});
        CHECK(whole == partial + tail);
    }
}
