/** @file test_angular.cpp
 *  @brief Clebsch-Gordan algebra, coupling tensors, Legendre integrals, harmonics. */
#include <cmath>
#include <random>

#include "doctest.h"
#include "opeforge/angular.hpp"

using namespace opeforge;

namespace {
SignedMode plus(int l, int m) { return {Sign::Plus, {l, m}}; }
SignedMode minus(int l, int m) { return {Sign::Minus, {l, m}}; }
RadicalScalar sq(long n, long d) { return RadicalScalar::sqrt_of(Rational(n, d)); }
}  // namespace

TEST_CASE("clebsch-gordan special values") {
  for (int l = 0; l <= 4; ++l)
    for (int m = -l; m <= l; ++m)
      for (int J = 0; J <= 5; ++J)
        for (int M = -J; M <= J; ++M)
          CHECK(clebsch_gordan(l, m, 0, 0, J, M) == RadicalScalar(Rational(J == l && M == m ? 1 : 0)));
  auto c = clebsch_gordan(1, 0, 1, 0, 2, 0);
  CHECK(c * c == RadicalScalar(Rational(2, 3)));
  CHECK(clebsch_gordan(0, 0, 0, 0, 0, 0) == RadicalScalar(Rational(1)));
  CHECK(clebsch_gordan(1, 0, 1, 0, 3, 0).is_zero());  // triangle
  CHECK(clebsch_gordan(1, 1, 1, 1, 2, 1).is_zero());  // M mismatch
}

TEST_CASE("parity coefficient and 3j") {
  CHECK(parity_cg(1, 1, 2) == sq(2, 3));
  CHECK(parity_cg(1, 1, 1).is_zero());
  CHECK(parity_cg(0, 5, 5) == RadicalScalar(Rational(1)));
  CHECK(parity_cg_squared(1, 1, 2) == Rational(2, 3));
  CHECK(wigner3j(0, 0, 0, 0, 0, 0) == RadicalScalar(Rational(1)));
  CHECK(wigner3j(1, 1, 2, 0, 0, 0) == sq(2, 15));
  CHECK(wigner3j(1, 1, 5, 0, 0, 0).is_zero());
}

TEST_CASE("legendre triple integrals") {
  CHECK(legendre_triple_integral(1, 1, 2) == Rational(4, 15));
  CHECK(legendre_triple_integral(1, 1, 1) == 0);
  CHECK(legendre_triple_integral(0, 0, 0) == 2);
  CHECK(legendre_pq_integral(1, 2, 2).is_zero());
}

TEST_CASE("property: parity_cg squared equals the Legendre triple integral") {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int J = 0; J <= 6; ++J)
        CHECK(parity_cg_squared(a, b, J) == Rational(2 * J + 1, 2) * legendre_triple_integral(a, b, J));
}

TEST_CASE("coupling tensors") {
  auto t = couple_tensor({plus(3, 0)});
  REQUIRE(t.size() == 1);
  CHECK(t.begin()->first == JM{3, 0});
  // Creation maps to S^{lm} = (-1)^m S_{l,-m}.
  auto u = couple_tensor({plus(1, 1)});
  REQUIRE(u.size() == 1);
  CHECK(u.begin()->first == JM{1, -1});
  CHECK(u.begin()->second == RadicalScalar(Rational(-1)));
  auto z = couple_tensor({minus(0, 0), minus(0, 0)});
  REQUIRE(z.size() == 1);
  CHECK(z.at(JM{0, 0}) == RadicalScalar(Rational(1)));
  // S_10 S_10 = cos^2 = 1/3 + (2/3) P_2
  auto w = couple_tensor({minus(1, 0), minus(1, 0)});
  CHECK(w.at(JM{0, 0}) == RadicalScalar(Rational(1, 3)));
  CHECK(w.at(JM{2, 0}) == RadicalScalar(Rational(2, 3)));
  CHECK(w.size() == 2);

  ModeMultiset five({plus(0, 0), plus(0, 0), plus(0, 0), plus(0, 0), plus(0, 0)});
  auto f = couple_tensor_canonical(five);
  REQUIRE(f.size() == 1);
  CHECK(f.at(JM{0, 0}) == RadicalScalar(Rational(1)));

  ModeMultiset mixed({plus(0, 0), plus(0, 0), plus(0, 0), minus(0, 0), minus(2, 1)});
  auto g = couple_tensor_canonical(mixed);
  REQUIRE(g.size() == 1);
  CHECK(g.at(JM{2, 1}) == RadicalScalar(Rational(1)));

  // Contracted pair: summed over m it reduces to 1 by the addition theorem.
  ModeMultiset pair({plus(2, 1), minus(2, 1)});
  auto h = couple_tensor_canonical(pair, true);
  REQUIRE(h.size() == 1);
  CHECK(h.at(JM{0, 0}) == RadicalScalar(Rational(1)));
}

TEST_CASE("dimension constants") {
  for (int l = 0; l <= 6; ++l) {
    CHECK(dim_constants(l, 3).N == 2 * l + 1);
    CHECK(dim_constants(l, 4).N == (l + 1) * (l + 1));
  }
  for (int D = 3; D <= 6; ++D) CHECK(dim_constants(0, D).N == 1);
}

TEST_CASE("harmonics: normalization and addition theorem") {
  for (int l = 0; l <= 8; ++l) CHECK(std::abs(harmonic(l, 0, 0.0, 0.0) - 1.0) < 1e-14);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1), ph(0, 6.283185307179586);
  for (int i = 0; i < 20; ++i) {
    double t1 = std::acos(u(rng)), p1 = ph(rng), t2 = std::acos(u(rng)), p2 = ph(rng);
    double c = std::sin(t1) * std::sin(t2) * std::cos(p1 - p2) + std::cos(t1) * std::cos(t2);
    auto P = legendre_values(10, c);
    auto Y1 = harmonics_table(10, t1, p1), Y2 = harmonics_table(10, t2, p2);
    for (int l = 0; l <= 10; ++l) {
      std::complex<double> s = 0;
      for (int m = -l; m <= l; ++m) s += std::conj(Y1[l * (l + 1) + m]) * Y2[l * (l + 1) + m];
      CHECK(std::abs(s - P[l]) < 1e-12);
    }
  }
}

TEST_CASE("property: product rule matches pointwise harmonics") {
  // S_{l1 m1} S_{l2 m2} evaluated directly versus the coupled expansion.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1), ph(0, 6.283185307179586);
  for (int i = 0; i < 10; ++i) {
    double th = std::acos(u(rng)), p = ph(rng);
    auto Y = harmonics_table(8, th, p);
    for (int l1 = 0; l1 <= 3; ++l1)
      for (int l2 = 0; l2 <= 3; ++l2)
        for (int m1 = -l1; m1 <= l1; ++m1)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            auto t = couple_tensor({minus(l1, m1), minus(l2, m2)});
            std::complex<double> s = 0;
            for (const auto& [jm, c] : t) s += c.to_real().convert_to<double>() * Y[jm.J * (jm.J + 1) + jm.M];
            CHECK(std::abs(s - Y[l1 * (l1 + 1) + m1] * Y[l2 * (l2 + 1) + m2]) < 1e-12);
          }
  }
}
