#include <doctest.h>

#include <functional>
#include <map>

#include "quadpat/rational.hpp"

using quadpat::Rational;

TEST_SUITE("rational") {

TEST_CASE("construction canonicalizes sign and gcd") {
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(0, -7).str() == "0");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse accepts integers and fractions, rejects junk") {
  CHECK(*Rational::parse("7") == Rational(7));
  CHECK(*Rational::parse("-2/3") == Rational(-2, 3));
  CHECK(*Rational::parse("4/6") == Rational(2, 3));
  CHECK(*Rational::parse("0") == Rational(0));
  CHECK(!Rational::parse(""));
  CHECK(!Rational::parse("1/0"));
  CHECK(!Rational::parse("a"));
  CHECK(!Rational::parse("1/"));
  CHECK(!Rational::parse("1/2/3"));
  CHECK(!Rational::parse("1 "));
}

TEST_CASE("field operations") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(1, 2) / Rational(3, 4) == Rational(2, 3));
  CHECK(Rational(-5, 7).reciprocal() == Rational(-7, 5));
  CHECK_THROWS_AS(Rational(0).reciprocal(), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("ordering is by value") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(-1) < Rational(0));
  CHECK(Rational(7, 7) == Rational(1));
  CHECK(Rational(2, 3) <= Rational(2, 3));
  CHECK(Rational(5, 4) > Rational(1));
}

TEST_CASE("str is canonical and parse inverts it") {
  for (long long n = -6; n <= 6; ++n)
    for (long long d = 1; d <= 5; ++d) {
      const Rational r(n, d);
      CHECK(*Rational::parse(r.str()) == r);
    }
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(-2, 3).str() == "-2/3");
}

TEST_CASE("integer extraction") {
  CHECK(*Rational(42).as_int64() == 42);
  CHECK(*Rational(-8, 2).as_int64() == -4);
  CHECK(!Rational(1, 2).as_int64());
}

TEST_CASE("hash agrees on equal values") {
  std::hash<Rational> h;
  CHECK(h(Rational(4, 6)) == h(Rational(2, 3)));
  std::map<Rational, int> m;
  m[Rational(1, 2)] = 1;
  m[Rational(2, 4)] = 2;
  CHECK(m.size() == 1);
  CHECK(m[Rational(1, 2)] == 2);
}

TEST_CASE("large intermediate values stay exact") {
  // (10^12 / 3) * (3 / 10^12) collapses to 1 without overflow.
  const Rational big(1000000000000LL, 3);
  CHECK(big * Rational(3, 1000000000000LL) == Rational(1));
  Rational acc(1);
  for (int i = 0; i < 40; ++i) acc = acc * Rational(10);
  CHECK(acc.str().size() == 41);  // 1 followed by 40 zeros
}

}  // TEST_SUITE
