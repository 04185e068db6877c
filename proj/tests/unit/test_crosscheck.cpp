/** @file test_crosscheck.cpp
 *  @brief Three-point coefficient: customary series, quadrature and factorization. */
#include <cmath>

#include "doctest.h"
#include "opeforge/crosscheck.hpp"
#include "opeforge/errors.hpp"

using namespace opeforge;

namespace {
ThreePointConfig cfg(double s, double c, double mu = 1.0, int N = 500, double r23 = 1.0) {
  ThreePointConfig k;
  k.s = s;
  k.c = c;
  k.mu = mu;
  k.N = N;
  k.r23 = r23;
  return k;
}
}  // namespace

TEST_CASE("customary series limits") {
  double base = 10 * (std::log(1.7 * 1.7 * 2.0 * 2.0) - 2);
  CHECK(std::abs(customary_3pt(cfg(1e-12, 0.3, 1.7, 500, 2.0)) - base) < 1e-9);
  CHECK(std::abs(customary_3pt(cfg(0.6, 1.0, 1.7, 500, 2.0)) - base) < 1e-12);
  CHECK(std::isfinite(customary_3pt(cfg(0.5, 0.0))));
  CHECK_THROWS_AS(customary_3pt(cfg(1.2, 0.0)), InputError);
  CHECK_THROWS_AS(customary_3pt(cfg(0.5, 1.5)), InputError);
}

TEST_CASE("customary series against radial quadrature") {
  for (double s : {0.15, 0.5, 0.75})
    for (double c : {-0.8, 0.1, 0.95}) {
      auto k = cfg(s, c, 1.3, 500, 1.4);
      CHECK(std::abs(customary_3pt(k) - customary_quadrature(k)) < 1e-6);
    }
}

TEST_CASE("factorized series limits") {
  CHECK(std::abs(factorized_3pt(cfg(1e-12, -0.4, 1.0, 60, 2.5)) - 10 * std::log(2.5 * 2.5)) < 1e-9);
  verify_factorization_families(40, 6);
}

TEST_CASE("difference is the renormalization constant") {
  for (double mu : {1.0, std::exp(1.0), 3.0})
    for (double r23 : {1.0, 0.7})
      for (double s : {0.2, 0.7})
        for (double c : {-0.5, 0.3}) {
          auto k = cfg(s, c, mu, 500, r23);
          double diff = customary_3pt(k) - factorized_3pt(k);
          CHECK(std::abs(diff - 10 * (std::log(mu * mu) - 2)) < 1e-8);
        }
}

TEST_CASE("addition-theorem shortcut equals the explicit m sum") {
  auto k = cfg(0.6, -0.35, 1.0, 200);
  CHECK(std::abs(factorized_3pt(k) - factorized_3pt_bruteforce(k)) < 1e-10);
}

TEST_CASE("grid comparison report") {
  auto rep = compare(default_grid(500, 1.0));
  CHECK(rep.points == 152);
  CHECK(rep.passed);
  CHECK(rep.max_deviation < 1e-8);
  CHECK(std::abs(rep.constant_estimate + 20) < 1e-8);
  auto j = rep.to_json();
  CHECK(j.contains("grid"));
  CHECK(j.contains("constant_estimate"));
  CHECK(j["pass"].get<bool>());
}
