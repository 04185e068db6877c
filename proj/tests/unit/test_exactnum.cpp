/** @file test_exactnum.cpp
 *  @brief Rationals, quadratic radicals and guarded reals. */
#include <random>

#include "doctest.h"
#include "opeforge/errors.hpp"
#include "opeforge/exactnum.hpp"

using namespace opeforge;

TEST_CASE("radical normalization extracts squares") {
  auto a = RadicalScalar::normalize({{BigInt(8), Rational(1, 2)}});
  REQUIRE(a.terms().size() == 1);
  CHECK(a.terms().begin()->first == 2);
  CHECK(a.terms().begin()->second == 1);

  auto b = RadicalScalar::normalize({{BigInt(1), Rational(3)}, {BigInt(4), Rational(1)}});
  CHECK(b == RadicalScalar(Rational(5)));

  auto z = RadicalScalar::normalize({{BigInt(2), Rational(1)}, {BigInt(2), Rational(-1)}});
  CHECK(z.is_zero());
}

TEST_CASE("radical arithmetic") {
  auto s2 = RadicalScalar::sqrt_of(2), s3 = RadicalScalar::sqrt_of(3);
  CHECK(s2 * s2 == RadicalScalar(Rational(2)));
  CHECK(s2 * s3 == RadicalScalar::sqrt_of(6));
  CHECK((RadicalScalar(Rational(1)) + s3) + RadicalScalar(Rational(-1)) == s3);
  CHECK(RadicalScalar::sqrt_of(Rational(2, 3)) * RadicalScalar::sqrt_of(Rational(2, 3)) ==
        RadicalScalar(Rational(2, 3)));
  CHECK_THROWS_AS(s2.as_rational(), DomainError);
}

TEST_CASE("guarded approximation of radicals") {
  set_working_digits(50);
  auto a = to_approx(RadicalScalar::sqrt_of(2), 20);
  CHECK(a.err <= Real("1e-19"));
  CHECK(bmp::abs(a.value * a.value - 2) <= 2 * a.err * 2);
  auto z = to_approx(RadicalScalar(), 20);
  CHECK(z.value == 0);
  CHECK(z.err == 0);
  auto t = to_approx(RadicalScalar(Rational(2, 3)), 20);
  CHECK(bmp::abs(t.value - Real(2) / 3) <= t.err);
}

TEST_CASE("rational helpers") {
  CHECK(ratio(1, -2) == Rational(-1, 2));
  CHECK(factorial(5) == 120);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(parse_rational("-7/21") == Rational(-1, 3));
  CHECK(rational_string(Rational(3, 4)) == "3/4");
}

TEST_CASE("scalar promotion and json round trip") {
  Scalar e(Rational(1, 3));
  Scalar a = Scalar::approx(Real("0.5"), Real("1e-30"));
  Scalar s = e + a;
  CHECK_FALSE(s.is_exact());
  CHECK(approx_equal(s, Scalar(Rational(5, 6)), 1e-25));
  Scalar r = Scalar(RadicalScalar::sqrt_of(5)) * Scalar(Rational(-2, 7));
  CHECK(scalar_from_json(scalar_to_json(r)) == r);
  CHECK(scalar_from_json(scalar_to_json(s)) == s);
}

TEST_CASE("property: exact field operations on random rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int i = 0; i < 200; ++i) {
    long n1 = d(rng), n2 = d(rng), d1 = std::abs(d(rng)) + 1, d2 = std::abs(d(rng)) + 1;
    Scalar x(ratio(n1, d1)), y(ratio(n2, d2));
    CHECK((x + y) - y == x);
    CHECK(x * y == y * x);
    Scalar rx = Scalar(RadicalScalar::sqrt_of(ratio(d1, d2))) * x;
    CHECK(rx * rx == Scalar(ratio(n1 * n1 * d1, d1 * d1 * d2)));
  }
}
