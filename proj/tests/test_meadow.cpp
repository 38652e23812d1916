#include "credal/meadow.hpp"

#include <string>

#include "doctest.h"

using credal::BigInt;
using credal::cond;
using credal::div;
using credal::inv;
using credal::Rational;
using credal::sign;

namespace {

Rational q(long long n, long long d) { return Rational(n, d); }

}  // namespace

TEST_CASE("division is total with zero denominators collapsing to zero") {
  CHECK(Rational(5) / Rational(0) == Rational(0));
  CHECK(Rational(0) / Rational(0) == Rational(0));
  CHECK(q(-3, 7) / Rational(0) == Rational(0));
  CHECK(inv(Rational(0)) == Rational(0));
  CHECK(div(Rational(1), Rational(0)) == Rational(0));
}

TEST_CASE("division agrees with field division away from zero") {
  CHECK(q(3, 4) / q(1, 2) == q(3, 2));
  CHECK(q(-3, 4) / q(3, 4) == Rational(-1));
  Rational a = q(22, 7);
  Rational b = q(-5, 13);
  CHECK((a / b) * b == a);
  CHECK(inv(inv(a)) == a);
  CHECK(inv(inv(Rational(0))) == Rational(0));
}

TEST_CASE("reflection: x * (x / x) recovers x for every x") {
  for (long long n : {-4LL, -1LL, 0LL, 1LL, 7LL}) {
    Rational x = q(n, 3);
    CHECK(x * (x / x) == x);
  }
}

TEST_CASE("cond selects by the zero test of its middle argument") {
  CHECK(cond(Rational(10), Rational(1), Rational(20)) == Rational(10));
  CHECK(cond(Rational(10), q(-1, 9), Rational(20)) == Rational(10));
  CHECK(cond(Rational(10), Rational(0), Rational(20)) == Rational(20));
}

TEST_CASE("sign splits the line in three") {
  CHECK(sign(q(1, 1000)) == 1);
  CHECK(sign(Rational(0)) == 0);
  CHECK(sign(q(-1, 1000)) == -1);
}

TEST_CASE("values are canonical and render as reduced fractions") {
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(2, -4) == q(-1, 2));
  CHECK(q(6, 3).str() == "2");
  CHECK(q(-6, 4).str() == "-3/2");
  CHECK(Rational(0).str() == "0");
  CHECK(q(1, 3).denominator() == BigInt(3));
}

TEST_CASE("parse accepts fractions, integers and finite decimals") {
  CHECK(Rational::parse("3/4") == q(3, 4));
  CHECK(Rational::parse("-12") == Rational(-12));
  CHECK(Rational::parse("0.8") == q(4, 5));
  CHECK(Rational::parse("-3.25") == q(-13, 4));
  CHECK_THROWS_AS(Rational::parse("one half"), credal::ParseError);
  CHECK_THROWS_AS(Rational::parse(""), credal::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), credal::ParseError);
}

TEST_CASE("ordering is the usual dense order") {
  CHECK(q(1, 3) < q(1, 2));
  CHECK(q(-1, 2) < q(-1, 3));
  CHECK(q(7, 5) >= q(7, 5));
  CHECK(q(1, 1000000007) > Rational(0));
}

TEST_CASE("arithmetic stays exact far beyond machine words") {
  Rational big = Rational(1);
  for (int i = 0; i < 40; ++i) big *= q(10, 3);
  Rational back = big;
  for (int i = 0; i < 40; ++i) back /= q(10, 3);
  CHECK(back == Rational(1));
  CHECK(big.approx() == doctest::Approx(8.2253e20).epsilon(0.001));
}
