/** @file special.hpp
 *  @brief Digamma, hypergeometric series at unity, Dougall's identity, characteristic
 *  sums and the remainder functions of the first-order vertex operators. */
#pragma once

#include <string>
#include <vector>

#include "opeforge/exactnum.hpp"

namespace opeforge {

/// rational + gamma_coeff·γ + log2_coeff·log 2.
struct DigammaValue {
  Rational rational;
  Rational gamma_coeff;
  Rational log2_coeff;
  DigammaValue& operator+=(const DigammaValue& o);
  DigammaValue& operator-=(const DigammaValue& o);
  DigammaValue& operator*=(const Rational& q);
  Real to_real() const;
};

/// ψ(x) for x = twice_x/2 > 0 (integer or half-integer).
DigammaValue digamma_exact(long twice_x);
/// ψ(x) numerically for general x > 0.
Real digamma_real(const Real& x);

struct HyperParams {
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  /// Σ lower − Σ upper.
  Rational balance() const;
};

/// pFq at z = 1 for balance ω > 0, Richardson-accelerated partial sums.
ApproxScalar pfq_at_unity(const HyperParams& params, double tolerance = 1e-30);
/// Finite part L of a zero-balanced series: K·F(z) = −log(1−z) + L + o(1), K = ΠΓ(α)/ΠΓ(β).
ApproxScalar finite_part_L(const HyperParams& params, double tolerance = 1e-25);
/// Closed form of L for ₃F₂ via 2ψ(1) − ψ(α1) − ψ(α2) + B(2) (cross-check path).
ApproxScalar finite_part_L_3f2(const HyperParams& params);

/// π/sin(πν) · P_ν(−y).
double dougall_rhs(double nu, double y);
/// Σ_{k≤N} (2k+1) P_k(y) / (ν(ν+1) − k(k+1)).
double dougall_lhs_partial(double nu, double y, int N);

struct CharSumResult {
  Scalar value;
  int method = 0;  // 1: odd, inside triangle; 2: odd, outside; 3: even, outside; 4: even, inside
  std::string tag() const;
};

/// S(l1,l2;a) = Σ_{J≠a} ⟨l1 l2 0 0|J 0⟩² / (a(a+1) − J(J+1)) by case formulas.
CharSumResult char_sum(int l1, int l2, int a);
/// Direct finite J sum of the same quantity.
Rational char_sum_bruteforce(int l1, int l2, int a);
/// ∫_{-1}^{1} P_{l1} P_{l2} P_a log(1−y) dy = rational + log2_coeff·log 2.
std::pair<Rational, Rational> legendre_log_integral(int l1, int l2, int a);

// ---- remainder operators --------------------------------------------------

struct RemainderValue {
  Scalar log_coeff;   // coefficient of log r
  Scalar const_part;  // r-independent part
  std::string method;
  bool is_zero() const { return log_coeff.is_zero() && const_part.is_zero(); }
};

/// Converts the remainder grading argument to an integer: integers pass through,
/// half-integers are read as d_𝔄 and shifted by −3/2.
int remainder_grading(const Rational& d);

/// (R1)_{φ²}(d, j, q). q ∈ {0,4} vanish; otherwise the value of the defining contraction sum.
RemainderValue r1_phi2(const Rational& d, int j, int q);
/// Exact coefficient of the divergent log(1−η) pieces assembled in the q = 2 evaluation (must be 0).
Rational r1_phi2_divergence_coefficient(int d, int j);
/// Truncated defining sum (l ≤ L, second series aligned to L + d + 2), double precision.
/// With tail_correction, Richardson in L removes the O(1/L) tail of the q = 2 case.
RemainderValue r1_phi2_bruteforce(int d, int j, int L, bool tail_correction = false);

/// (R1)_{φ³}(d, j, q) for q ∈ {0, 3}; q ∈ {1, 2} raise UnsupportedError.
RemainderValue r1_phi3(const Rational& d, int j, int q);
/// Exact prefactor of the divergent log(1−η) before counterterm subtraction (equals 20).
Rational r1_phi3_divergence_prefactor(int d, int j);
/// Truncated double contraction sum with direct J2 sums up to N = L plus a fitted tail (q = 0).
RemainderValue r1_phi3_bruteforce(int d, int j, int L);
/// Literal transcription of the published closed form (finite sums plus ₆F₅ finite parts).
/// Diagnostic only: it does not agree with the defining sum (see README, known deviations).
RemainderValue r1_phi3_published_closed_form(int d, int j);

}  // namespace opeforge
