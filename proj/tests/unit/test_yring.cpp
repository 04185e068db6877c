/** @file test_yring.cpp
 *  @brief Laplacian, its right inverse, normal ordering and matrix elements. */
#include <random>

#include "doctest.h"
#include "opeforge/yring.hpp"

using namespace opeforge;

namespace {
RingElement T(Rational c, int d, int p, int J = 0, int M = 0) { return RingElement::term(Scalar(c), d, p, J, M); }
}  // namespace

TEST_CASE("laplacian on monomials") {
  CHECK(laplacian(T(1, 2, 0)) == T(6, 0, 0));
  for (int l = 0; l <= 5; ++l) CHECK(laplacian(T(1, l, 0, l, l)).is_zero());
  // (d²/dr² + 2/r d/dr) log r = 1/r²
  CHECK(laplacian(T(1, 0, 1)) == T(1, -2, 0));
  CHECK(laplace_eigen(2, 0, 3) == 6);
  CHECK(laplace_eigen(3, 1, 4) == 2 * 6);
}

TEST_CASE("right-inverse factors") {
  CHECK(d_factor(1, 0, 0) == LogPoly{{0, Scalar(Rational(1, 2))}});
  CHECK(d_factor(0, 0, 0) == LogPoly{{1, Scalar(Rational(1))}});
  // Resonant d = J = 2: log r/10 - 1/25 (keys are log-power offsets).
  CHECK(d_factor(2, 2, 1) == LogPoly{{0, Scalar(Rational(-1, 25))}, {1, Scalar(Rational(1, 10))}});
  // Non-resonant: box(r^2 log r/6 - 5 r^2/36) = log r.
  CHECK(d_factor(2, 0, 1) == LogPoly{{-1, Scalar(Rational(-5, 36))}, {0, Scalar(Rational(1, 6))}});
}

TEST_CASE("inverse laplacian examples") {
  CHECK(inverse_laplacian(T(1, 0, 0)) == T(Rational(1, 6), 2, 0));
  CHECK(inverse_laplacian(RingElement()).is_zero());
  CHECK(inverse_laplacian(T(1, -1, 0)) == T(Rational(1, 2), 1, 0));
}

TEST_CASE("property: laplacian after inverse is the identity") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dd(-10, 10), jj(0, 8), pp(0, 3), DD(3, 5);
  for (int i = 0; i < 300; ++i) {
    int J = jj(rng), D = DD(rng);
    int M = std::uniform_int_distribution<int>(-J, J)(rng);
    RingElement e = T(Rational(i % 5 + 1, i % 3 + 1), dd(rng), pp(rng), J, M) +
                    T(Rational(-2), dd(rng), pp(rng), J, M);
    CHECK(laplacian(inverse_laplacian(e, D), D) == e);
  }
}

TEST_CASE("symbolic log mu tracking") {
  // Resonant inversion produces log(mu r); the mu power is tracked separately.
  auto e = inverse_laplacian(T(1, -2, 0), 3, true);
  bool has_mu = false;
  for (const auto& [k, s] : e.terms()) has_mu = has_mu || k.pmu > 0;
  CHECK(has_mu);
  CHECK(laplacian(inverse_laplacian(T(1, -2, 0))) == T(1, -2, 0));
}

TEST_CASE("normal ordering") {
  AngularLabel x{2, 1};
  auto prod = normal_order_product(NormalMonomial({}, {x}), NormalMonomial({x}, {}));
  REQUIRE(prod.size() == 2);
  std::map<NormalMonomial, BigInt> got(prod.begin(), prod.end());
  CHECK(got.at(NormalMonomial({x}, {x})) == 1);
  CHECK(got.at(NormalMonomial()) == 1);

  auto cc = normal_order_product(NormalMonomial({x}, {}), NormalMonomial({x}, {}));
  REQUIRE(cc.size() == 1);
  CHECK(cc[0].first == NormalMonomial({x, x}, {}));

  // b b · b† = b† b b + 2 b
  auto bb = normal_order_product(NormalMonomial({}, {x, x}), NormalMonomial({x}, {}));
  std::map<NormalMonomial, BigInt> g2(bb.begin(), bb.end());
  CHECK(g2.size() == 2);
  CHECK(g2.at(NormalMonomial({x}, {x, x})) == 1);
  CHECK(g2.at(NormalMonomial({}, {x})) == 2);
}

TEST_CASE("matrix elements of ladder words") {
  for (int p = 1; p <= 5; ++p) {
    RingElement e;
    TermKey k;
    k.ladder = NormalMonomial({}, {AngularLabel{0, 0}});
    e.add(k, Scalar(Rational(1)));
    auto v = matrix_element(e, MultiIndex::phi_power(p), MultiIndex::phi_power(p - 1));
    CHECK(v == T(p, 0, 0));
    CHECK(matrix_element(e, MultiIndex::phi_power(p), MultiIndex::phi_power(p)).is_zero());
  }
  RingElement w;
  TermKey k;
  k.ladder = NormalMonomial({AngularLabel{0, 0}, AngularLabel{0, 0}}, {});
  w.add(k, Scalar(Rational(1)));
  CHECK(matrix_element(w, MultiIndex(), MultiIndex::phi_power(2)) == T(1, 0, 0));
}

TEST_CASE("ring json round trip and evaluation") {
  RingElement e = T(Rational(3, 7), 2, 1, 2, -1) + RingElement::term(Scalar(RadicalScalar::sqrt_of(3)), -1, 0, 0, 0);
  CHECK(RingElement::from_json(e.to_json()) == e);
  CHECK(e.max_log_power() == 1);
  auto v = T(Rational(1, 6), 2, 0).evaluate(2.0, 0.3, 0.1);
  CHECK(std::abs(v - std::complex<double>(4.0 / 6.0, 0)) < 1e-15);
}
