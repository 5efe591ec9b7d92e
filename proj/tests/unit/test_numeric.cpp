#include <doctest.h>

#include <cmath>
#include <limits>

#include "zerodist/numeric.hpp"

using namespace zerodist;

TEST_SUITE("numeric") {
  TEST_CASE("parse and print rationals") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational(" -7 ")) == "-7");
    CHECK(to_string(parse_rational("+2/4")) == "1/2");
    CHECK(to_string(parse_rational("-2/4")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("2/-4"), std::invalid_argument);
    CHECK(to_string(parse_rational("0/5")) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  }

  TEST_CASE("doubles round-trip through the shortest form") {
    for (double x : {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 0.0, 1e16, 5e-324}) {
      std::string s = format_double(x);
      CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  }

  TEST_CASE("rational to double is correctly rounded") {
    CHECK(to_double(Rational(1, 3)) == 1.0 / 3);
    CHECK(to_double(Rational(2, 3)) == 2.0 / 3);
    // 1 + 2^-53 + 2^-80 must round up, a naive num/den division does not see the tail
    Rational x = 1 + Rational(1, Integer(1) << 53) + Rational(1, Integer(1) << 80);
    CHECK(to_double(x) == std::nextafter(1.0, 2.0));
    CHECK(from_double(0.375) == Rational(3, 8));
    CHECK(to_double(from_double(0.1)) == 0.1);
  }

  TEST_CASE("high precision formatting") {
    HighFloat r = to_high(Rational(1, 7));
    CHECK(format_high(r, 20) == "0.14285714285714285714");
  }
}
