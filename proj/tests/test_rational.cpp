#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "navlab/rational.hpp"

using navlab::Rational;

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK((Rational(2, 4).num() == 1 && Rational(2, 4).den() == 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(3, -6).den() == 2);
  CHECK(Rational(0, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 3) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(navlab::BigInt(1), navlab::BigInt(0)), std::domain_error);
}

TEST_CASE("rational round trips through strings") {
  CHECK(Rational::parse("-697/360").to_string() == "-697/360");
  CHECK(Rational::parse("42").to_string() == "42");
  CHECK(Rational::parse("51048661/11612160") == Rational(51048661LL, 11612160LL));
  CHECK(Rational(-3, 1).to_string() == "-3");
}

TEST_CASE("rational ordering and conversion") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(-11, 30).to_double() == Catch::Approx(-11.0 / 30.0).epsilon(1e-15));
}

TEST_CASE("additive and multiplicative inverses hold exactly") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long long> num(-1000, 1000);
  std::uniform_int_distribution<long long> den(1, 1000);
  for (int i = 0; i < 500; ++i) {
    const Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    CHECK((a + b) - b == a);
    if (b.is_zero()) b = Rational(1);
    CHECK((a * b) / b == a);
  }
}

TEST_CASE("huge intermediate integers survive") {
  // grows far beyond 64 bits, then cancels back
  Rational x(1, 3);
  for (int i = 0; i < 40; ++i) x = x * Rational(1000000007LL, 998244353LL);
  for (int i = 0; i < 40; ++i) x = x / Rational(1000000007LL, 998244353LL);
  CHECK(x == Rational(1, 3));
}
