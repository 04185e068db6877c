/** @file crosscheck.hpp
 *  @brief Three-point coefficient C₁^{φ³}_{φφφ}: customary Feynman-integral evaluation versus
 *  factorization through live two-point coefficients. */
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace opeforge {

struct ThreePointConfig {
  double s = 0.5;    // r13 / r23, in (0,1)
  double c = 0.0;    // x̂13 · x̂23
  double r23 = 1.0;
  double mu = 1.0;
  int N = 500;       // truncation order
  /// Orders n ≤ full_m_max are summed explicitly over m; above, the addition theorem is used.
  int full_m_max = 8;
  void validate() const;
};

/// 10(Σ_{n≤N} s^{n+1}/(n+1)(P_n(c) − P_{n+1}(c)) + log(μ² r23²) − 2).
double customary_3pt(const ThreePointConfig& cfg);
/// The same quantity from numeric radial integration of the angular-integrated Feynman integral
/// (Legendre series truncated at N) with the differential-renormalization counterterm.
double customary_quadrature(const ThreePointConfig& cfg);

/// Σ_n [C₁^{(∂ⁿφ)φ³}_{φφ}(x13) C₀^{φ³}_{φ,(∂ⁿφ)φ³}(x23) + C₀^{(∂ⁿφ)φ}_{φφ}(x13) C₁^{φ³}_{φ,(∂ⁿφ)φ}(x23)]
/// with every coefficient fetched from the ope module; throws IntegrityError when a fetched
/// coefficient differs from its closed form.
double factorized_3pt(const ThreePointConfig& cfg);

/// Same sum with every order evaluated explicitly over m (no addition theorem).
double factorized_3pt_bruteforce(const ThreePointConfig& cfg);

/// Verifies the four fetched families for n ≤ nmax (all m for n ≤ full_m_max, m = 0 above).
void verify_factorization_families(int nmax, int full_m_max = 8);

struct CompareReport {
  int points = 0;
  double expected_offset = 0;    // 10(log μ² − 2)
  double constant_estimate = 0;  // mean of customary − factorized over the grid
  int N = 0;
  std::vector<double> s_values, c_values;
  double max_deviation = 0;
  double tail_bound = 0;
  double tolerance = 1e-8;
  double worst_s = 0, worst_c = 0;
  bool passed = false;
  nlohmann::json to_json() const;
};

/// s ∈ {0.1,…,0.8}, c ∈ {−0.9,…,0.9} in steps of 0.1.
std::vector<ThreePointConfig> default_grid(int N = 500, double mu = 1.0);
/// Checks customary − factorized = 10(log μ² − 2) up to tolerance + truncation tail.
CompareReport compare(const std::vector<ThreePointConfig>& grid, double tolerance = 1e-8);

}  // namespace opeforge
