#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "diffnet/rational.hpp"

using diffnet::Rational;

TEST_CASE("thirds sum exactly to one") {
  Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(third + third >= Rational(2, 3));
  CHECK_FALSE(third + third >= Rational(2, 3) + Rational(1, 1000000000));
}

TEST_CASE("construction reduces to canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, 4).num() == 1);
  CHECK(Rational(2, 4).den() == 2);
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(-1, -2) == Rational(1, 2));
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("ordering is exact cross multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(2, 3) > Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(1, 3) <= Rational(2, 6));
}

TEST_CASE("parse accepts integers, fractions and finite decimals") {
  CHECK(Rational::parse("3/10") == Rational(3, 10));
  CHECK(Rational::parse("2") == Rational(2));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("1.5") == Rational(3, 2));
  CHECK(Rational::parse("-0.2") == Rational(-1, 5));
  CHECK(Rational::parse("+4/6") == Rational(2, 3));
}

TEST_CASE("parse rejects malformed text") {
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e-3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(".5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1 / 2"), std::invalid_argument);
}

TEST_CASE("str round-trips through parse") {
  const Rational samples[] = {Rational(0),     Rational(1),      Rational(1, 3),
                              Rational(-7, 9), Rational(22, 10), Rational(1000000007, 3)};
  for (const Rational& r : samples) CHECK(Rational::parse(r.str()) == r);
  CHECK(Rational(2).str() == "2");
  CHECK(Rational(1, 3).str() == "1/3");
}
