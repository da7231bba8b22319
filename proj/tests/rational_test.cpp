#include <doctest.h>

#include "smax/errors.hpp"
#include "smax/rational.hpp"
#include "smax/rng.hpp"

using namespace smax;

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(7) / Rational(2) == Rational(7, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) > Rational(-1, 2));
  CHECK(Rational(5, 1).is_integer());
  CHECK(Rational(0).is_zero());
  CHECK(Rational(-7, 2).abs() == Rational(7, 2));
}

TEST_CASE("rational parse and str round-trip") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("7/2") == Rational(7, 2));
  CHECK(Rational(7, 2).str() == "7/2");
  CHECK(Rational(-3).str() == "-3");
  CHECK_THROWS_AS(Rational::parse("x"), InputError);
  CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
}

TEST_CASE("rational overflow is detected, not wrapped") {
  Rational big(int64_t{1} << 62);
  CHECK_THROWS_AS(big * big, OverflowError);
  CHECK_THROWS_AS(big + big + big, OverflowError);
}

TEST_CASE("rational exactness on random expression chains") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    int64_t a = static_cast<int64_t>(rng.below(2001)) - 1000;
    int64_t b = static_cast<int64_t>(rng.below(2000)) + 1;
    int64_t c = static_cast<int64_t>(rng.below(2001)) - 1000;
    int64_t d = static_cast<int64_t>(rng.below(2000)) + 1;
    Rational x(a, b), y(c, d);
    CHECK((x + y) - y == x);
    if (!y.is_zero()) CHECK((x * y) / y == x);
    CHECK(x - x == Rational(0));
  }
}
