#include <catch2/catch_amalgamated.hpp>

#include <secluded/rational.hpp>
#include <secluded/rng.hpp>

using namespace secluded;

TEST_CASE("decimal parsing is exact") {
    CHECK(Rational::from_string("0.5") == Rational(1, 2));
    CHECK(Rational::from_string("0.1") == Rational(1, 10));
    CHECK(Rational::from_string("-1.25") == Rational(-5, 4));
    CHECK(Rational::from_string("3") == Rational(3));
    CHECK(Rational::from_string("+0.250") == Rational(1, 4));
}

TEST_CASE("fraction parsing and canonical text") {
    CHECK(Rational::from_string("2/4") == Rational(1, 2));
    CHECK(Rational::from_string("-6/4").str() == "-3/2");
    CHECK(Rational(3).str() == "3/1");
    CHECK(Rational(0).str() == "0/1");
    CHECK(Rational::from_string("1.5/0.5") == Rational(3));
}

TEST_CASE("malformed text is rejected") {
    CHECK_FALSE(Rational::try_parse("").has_value());
    CHECK_FALSE(Rational::try_parse("1e-3").has_value());
    CHECK_FALSE(Rational::try_parse("abc").has_value());
    CHECK_FALSE(Rational::try_parse("1/0").has_value());
    CHECK_FALSE(Rational::try_parse("1.2.3").has_value());
    CHECK_THROWS_AS(Rational::from_string("nan"), ParseError);
}

TEST_CASE("floor and ceil") {
    CHECK(Rational(7, 2).floor() == Integer(3));
    CHECK(Rational(7, 2).ceil() == Integer(4));
    CHECK(Rational(-7, 2).floor() == Integer(-4));
    CHECK(Rational(-7, 2).ceil() == Integer(-3));
    CHECK(Rational(5).floor() == Integer(5));
    CHECK(Rational(5).ceil() == Integer(5));
}

TEST_CASE("doubles convert exactly as dyadics") {
    CHECK(Rational::from_double_exact(0.5) == Rational(1, 2));
    CHECK(Rational::from_double_exact(0.1) != Rational(1, 10));  // 0.1 is not dyadic
    CHECK(Rational::from_double_exact(-0.75) == Rational(-3, 4));
}

TEST_CASE("arithmetic stays canonical under random ops") {
    SplitMix rng(11);
    for (int i = 0; i < 500; ++i) {
        Rational a(rng.next_range(-50, 50), rng.next_range(1, 20));
        Rational b(rng.next_range(-50, 50), rng.next_range(1, 20));
        Rational s = a + b, p = a * b;
        CHECK(s - b == a);
        if (b.sgn() != 0) CHECK(p / b == a);
        CHECK(s.denominator() > Integer(0));
        CHECK(Rational::from_string(s.str()) == s);
    }
}

TEST_CASE("integer pow and factorial") {
    CHECK(Integer::pow(Integer(2), 10) == Integer(1024));
    CHECK(Integer::factorial(5) == Integer(120));
    CHECK(Rational::pow(Rational(3, 2), 4) == Rational(81, 16));
}
