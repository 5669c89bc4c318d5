#include <doctest.h>

#include <random>
#include <stdexcept>

#include "ftap/rational.hpp"

using ftap::Rational;

TEST_CASE("parse accepts integers, fractions and finite decimals exactly") {
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-2") == Rational(-2));
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK(Rational::parse("1/3") == Rational(1, 3));
    CHECK(Rational::parse("2/6") == Rational(1, 3));
    CHECK(Rational::parse("-4/8") == Rational(-1, 2));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-1.5") == Rational(-3, 2));
    CHECK(Rational::parse(".5") == Rational(1, 2));
    CHECK(Rational::parse("2.") == Rational(2));
    CHECK(Rational::parse("0.1") == Rational(1, 10));
}

TEST_CASE("parse rejects malformed text and zero denominators") {
    CHECK_THROWS_WITH_AS(Rational::parse("1/0"), "zero denominator", std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("."), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("values are canonical") {
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(0, 5).denominator() == "1");
    CHECK(Rational(10, 5).str() == "2");
    CHECK(Rational::parse("0.50").str() == "1/2");
}

TEST_CASE("division by zero is a domain error") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("printing and parsing round-trip, field axioms hold on random values") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> num(-1000000, 1000000);
    std::uniform_int_distribution<long long> den(1, 1000);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational a(num(rng), den(rng));
        const Rational b(num(rng), den(rng));
        const Rational c(num(rng), den(rng));
        CHECK(Rational::parse(a.str()) == a);
        CHECK((a + b) - b == a);
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK((a < b) == (b - a).sign() > 0);
    }
}

TEST_CASE("dyadic") {
    CHECK(ftap::dyadic(0) == Rational(1));
    CHECK(ftap::dyadic(3) == Rational(1, 8));
    CHECK(ftap::dyadic(70) * ftap::dyadic(1) == ftap::dyadic(71));
}
