/** @file angular.hpp
 *  @brief Clebsch-Gordan and 3j coefficients, coupling tensors, Legendre integrals
 *  and dimension constants. */
#pragma once

#include <complex>
#include <map>
#include <vector>

#include "opeforge/exactnum.hpp"
#include "opeforge/labels.hpp"

namespace opeforge {

struct JM {
  int J = 0;
  int M = 0;
  auto operator<=>(const JM&) const = default;
};

/// Expansion coefficients of a product of harmonics in the S_{JM} basis.
using CouplingResult = std::map<JM, RadicalScalar>;

/// ⟨l1 m1 l2 m2|J M⟩ by the Racah sum, Condon-Shortley phase. Memoized.
RadicalScalar clebsch_gordan(int l1, int m1, int l2, int m2, int J, int M);
/// ⟨l1 l2 0 0|J 0⟩ by the closed Γ-function formula.
RadicalScalar parity_cg(int l1, int l2, int J);
/// ⟨l1 l2 0 0|J 0⟩² as an exact rational (cheap path used by sums).
Rational parity_cg_squared(int l1, int l2, int J);
RadicalScalar wigner3j(int j1, int j2, int J, int m1, int m2, int M);

/// Left-to-right pairwise coupling using the harmonic product rule.
CouplingResult couple_tensor(const std::vector<SignedMode>& sequence);
/// Sorts by descending l first. With contraction, equal-label (+,-) pairs are dropped
/// (valid only when the caller sums over the shared m).
CouplingResult couple_tensor_canonical(const ModeMultiset& multiset, bool contraction = false);
/// Product of two expansions: S_{J1M1} S_{J2M2} = Σ_L ⟨J1 J2 M1 M2|L M⟩⟨J1 J2 0 0|L 0⟩ S_{LM}.
CouplingResult couple_product(const CouplingResult& a, const CouplingResult& b);

/// Exact coefficients of P_l in the monomial basis (index = power).
const std::vector<Rational>& legendre_coefficients(int l);
Rational legendre_triple_integral(int l1, int l2, int J);
/// G(l1,l2,j) Γ-ratio appearing in ∫P P Q outside the triangle.
Rational pq_gamma_ratio(int l1, int l2, int j);
/// ∫ P_{l1} P_{l2} Q_a for odd l1+l2+a.
RadicalScalar legendre_pq_integral(int l1, int l2, int a);

struct DimConstants {
  BigInt N;
  /// c_l = c_l_coeff × π^c_l_pi_power.
  RadicalScalar c_l_coeff;
  Rational c_l_pi_power;
  RadicalScalar F;
};
DimConstants dim_constants(int l, int D);

// ---- numeric harmonics ----------------------------------------------------

/// All S_{lm}(θ,φ) for l ≤ L, index l(l+1)+m; normalized so Σ_m S̄_{lm} S_{lm} = 1 on the sphere point.
std::vector<std::complex<double>> harmonics_table(int L, double theta, double phi);
std::complex<double> harmonic(int l, int m, double theta, double phi);
/// P_0..P_N at x by the three-term recursion.
std::vector<double> legendre_values(int N, double x);
std::vector<long double> legendre_values_ld(int N, long double x);

}  // namespace opeforge
