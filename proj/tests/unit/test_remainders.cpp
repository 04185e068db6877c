/** @file test_remainders.cpp
 *  @brief Remainder functions of the first-order vertex operators of phi^2 and phi^3. */
#include <cmath>

#include "doctest.h"
#include "opeforge/angular.hpp"
#include "opeforge/errors.hpp"
#include "opeforge/special.hpp"

using namespace opeforge;

TEST_CASE("phi^2 remainder vanishing cases") {
  for (int d = -4; d <= 4; ++d)
    for (int j = 0; j <= 3; ++j) {
      CHECK(r1_phi2(Rational(d), j, 0).is_zero());
      CHECK(r1_phi2(Rational(d), j, 4).is_zero());
    }
  CHECK(r1_phi2(Rational(-2), 0, 2).is_zero());
  CHECK_THROWS_AS(r1_phi2(Rational(0), 0, 5), InputError);
}

TEST_CASE("phi^2 remainder against the truncated contraction sum") {
  for (int d = -3; d <= 3; ++d)
    for (int j = 0; j <= 3; ++j) {
      bool odd = (d + j) % 2 != 0;
      auto cf = r1_phi2(Rational(d), j, odd ? 1 : 2);
      auto bf = r1_phi2_bruteforce(d, j, 600, !odd);
      CHECK(std::abs(cf.log_coeff.to_double() - bf.log_coeff.to_double()) < 1e-6);
      CHECK(std::abs(cf.const_part.to_double() - bf.const_part.to_double()) < 1e-4);
      if (!odd) CHECK(r1_phi2_divergence_coefficient(d, j) == 0);
    }
}

TEST_CASE("phi^2 remainder at l = 1 (frozen exact values)") {
  // d + j odd closed form at (d, j) = (0, 1): constant −1/9, log coefficient 2/3.
  auto v = r1_phi2(Rational(0), 1, 1);
  CHECK(v.const_part == Scalar(Rational(-1, 9)));
  CHECK(v.log_coeff == Scalar(Rational(2, 3)));
}

TEST_CASE("phi^3 remainder special values") {
  CHECK(r1_phi3(Rational(0), 0, 0).is_zero());
  auto v = r1_phi3(Rational(-3), 0, 3);
  CHECK(v.log_coeff == Scalar(Rational(-40)));
  CHECK(v.const_part.is_zero());
  CHECK_THROWS_AS(r1_phi3(Rational(0), 0, 1), UnsupportedError);
  CHECK_THROWS_AS(r1_phi3(Rational(0), 0, 2), UnsupportedError);
}

TEST_CASE("phi^3 remainder log coefficient at (2,0) from the finite CG sum") {
  // 20·[Σ_{l+l'≤2} ⟨0 l 0 0|J 0⟩² 3j(J, l', 2−l−l')² − 1]
  Rational s = 0;
  for (int l = 0; l <= 2; ++l)
    for (int lp = 0; l + lp <= 2; ++lp)
      for (int J = 0; J <= 2; ++J) {
        auto w = wigner3j(J, lp, 2 - l - lp, 0, 0, 0);
        s += parity_cg_squared(0, l, J) * (w * w).as_rational();
      }
  auto v = r1_phi3(Rational(2), 0, 0);
  CHECK(v.log_coeff == Scalar(Rational(20) * (s - 1)));
}

TEST_CASE("phi^3 remainder against the truncated double sum") {
  for (auto [d, j] : {std::pair{2, 0}, std::pair{4, 2}}) {
    auto cf = r1_phi3(Rational(d), j, 0);
    auto bf = r1_phi3_bruteforce(d, j, 400);
    CHECK(std::abs(cf.const_part.to_double() - bf.const_part.to_double()) < 1e-4);
    CHECK(std::abs(cf.log_coeff.to_double() - bf.log_coeff.to_double()) < 1e-6);
  }
  CHECK(r1_phi3_divergence_prefactor(2, 0) == 20);
  CHECK(r1_phi3_divergence_prefactor(4, 2) == 20);
}
