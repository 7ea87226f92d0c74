#include "doctest.h"
#include "rspace/rational.hpp"

using rspace::Rational;

TEST_CASE("normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(1, 3) - Rational(1, 2)) == Rational(-1, 6));
  CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
  CHECK((Rational(2, 3) / Rational(4, 3)) == Rational(1, 2));
  CHECK(Rational(7).is_integer());
  CHECK(Rational(0).is_zero());
  CHECK(Rational(14, 2).is_nonnegative_integer());
  CHECK_FALSE(Rational(-1).is_nonnegative_integer());
  CHECK_FALSE(Rational(1, 2).is_nonnegative_integer());
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("parsing") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK(Rational::parse("+5/10") == Rational(1, 2));
  CHECK_FALSE(Rational::parse("").has_value());
  CHECK_FALSE(Rational::parse("a").has_value());
  CHECK_FALSE(Rational::parse("1/0").has_value());
  CHECK_FALSE(Rational::parse("1.5").has_value());
  CHECK_FALSE(Rational::parse("1/").has_value());
}

TEST_CASE("string round trip") {
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-7).str() == "-7");
  CHECK(Rational::parse(Rational(22, 8).str()) == Rational(11, 4));
}

TEST_CASE("exact dot product") {
  rspace::RatVec a{Rational(1, 3), Rational(2)};
  rspace::RatVec b{Rational(3), Rational(1, 4)};
  CHECK(rspace::dot(a, b) == Rational(3, 2));
  CHECK(rspace::is_zero(rspace::RatVec{Rational(0), Rational(0)}));
  CHECK_FALSE(rspace::is_zero(a));
}
