#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sievelab/fraction.hpp"

using namespace sievelab;

TEST_CASE("construction normalises sign and gcd") {
  CHECK(Fraction(6, -4) == Fraction(-3, 2));
  CHECK(Fraction(0, -5) == Fraction(0, 1));
  CHECK(Fraction(-6, -4).num() == 3);
  CHECK(Fraction(-6, -4).den() == 2);
  CHECK_THROWS_AS(Fraction(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic") {
  const Fraction a(1, 3), b(1, 6);
  CHECK(a + b == Fraction(1, 2));
  CHECK(a - b == Fraction(1, 6));
  CHECK(a * b == Fraction(1, 18));
  CHECK(a / b == Fraction(2));
  CHECK(-a == Fraction(-1, 3));
  CHECK_THROWS(a / Fraction(0));
}

TEST_CASE("ordering is exact near equality") {
  const i64 big = 3'000'000'019;
  CHECK(Fraction(big - 1, big) < Fraction(big, big + 1));
  CHECK(Fraction(-1, 2) < Fraction(1, 3));
  CHECK(Fraction(2, 4) == Fraction(1, 2));
  CHECK((Fraction(1, 3) <=> Fraction(2, 6)) == std::strong_ordering::equal);
}

TEST_CASE("floor, ceil and frac") {
  CHECK(Fraction(7, 2).floor() == 3);
  CHECK(Fraction(7, 2).ceil() == 4);
  CHECK(Fraction(-7, 2).floor() == -4);
  CHECK(Fraction(-7, 2).ceil() == -3);
  CHECK(Fraction(4).floor() == 4);
  CHECK(Fraction(4).ceil() == 4);
  CHECK(Fraction(-1, 3).frac() == Fraction(2, 3));
  CHECK(Fraction(5, 3).frac() == Fraction(2, 3));
}

TEST_CASE("distance_to_integer") {
  CHECK(distance_to_integer(Fraction(3, 4)) == Fraction(1, 4));
  CHECK(distance_to_integer(Fraction(-3, 4)) == Fraction(1, 4));
  CHECK(distance_to_integer(Fraction(1, 2)) == Fraction(1, 2));
  CHECK(distance_to_integer(Fraction(5)) == Fraction(0));
}

TEST_CASE("overflow throws") {
  const i64 big = std::numeric_limits<i64>::max();
  CHECK_THROWS_AS(Fraction(big) + Fraction(1), std::overflow_error);
  CHECK_THROWS_AS(Fraction(1, 4'000'000'007) * Fraction(1, 3'000'000'019), std::overflow_error);
  CHECK_NOTHROW(Fraction(big) - Fraction(1));
}

TEST_CASE("approximate") {
  CHECK(approximate(0.5L, 10) == Fraction(1, 2));
  CHECK(approximate(3.14159265358979L, 7) == Fraction(22, 7));
  CHECK(approximate(3.14159265358979L, 200) == Fraction(355, 113));
  CHECK(approximate(-0.25L, 3) == Fraction(-1, 3));
  for (int i = 1; i < 2000; ++i) {
    const long double x = std::sin(static_cast<long double>(i)) * 3;
    const auto f = approximate(x, 1000);
    REQUIRE(f.den() <= 1000);
    // best approximation: no fraction with denominator <= 1000 is closer than
    // the trivial bound 1/(2 q) for the optimal q.
    REQUIRE(std::fabs(f.to_long_double() - x) <= 1.0L / (2.0L * f.den()));
  }
}

TEST_CASE("string form") {
  std::ostringstream os;
  os << Fraction(-3, 6);
  CHECK(os.str() == "-1/2");
  CHECK(Fraction(4).str() == "4");
}
