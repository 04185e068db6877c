/** @file exactnum.hpp
 *  @brief Exact rationals, quadratic radicals and guarded high-precision reals. */
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace opeforge {

namespace bmp = boost::multiprecision;
using BigInt = bmp::mpz_int;
using Rational = bmp::mpq_rational;
using Real = bmp::mpfr_float;

/// Working precision in decimal digits (OPE_FORGE_PRECISION, default 50).
int working_digits();
void set_working_digits(int digits);
/// Makes the calling thread's default Real precision match working_digits().
void ensure_real_precision();

/// num/den with either sign (the two-argument constructor needs den > 0).
Rational ratio(long num, long den);
Rational parse_rational(std::string_view text);
std::string rational_string(const Rational& q);
Real to_real(const Rational& q);
Rational factorial(unsigned n);
Rational binomial(long n, long k);

/// Γ(x) for x = twice_x/2 > 0 as rational × (√π)^sqrt_pi_power.
struct HalfGamma {
  Rational rat;
  int sqrt_pi_power;
};
HalfGamma gamma_half(long twice_x);

/// Splits n > 0 into (squarefree part s, root r) with n = r^2 * s.
std::pair<BigInt, BigInt> squarefree_split(const BigInt& n);

/** Σ q_i √n_i with squarefree keys n_i (key 1 is the rational part). */
class RadicalScalar {
 public:
  using Map = std::map<BigInt, Rational>;

  RadicalScalar() = default;
  RadicalScalar(const Rational& q);  // NOLINT(implicit)
  RadicalScalar(long v) : RadicalScalar(Rational(v)) {}  // NOLINT(implicit)

  /// Canonicalizes raw (key, coefficient) pairs; keys must be positive.
  static RadicalScalar normalize(const std::vector<std::pair<BigInt, Rational>>& raw);
  /// √q for q ≥ 0, stored as √(pq)/q form.
  static RadicalScalar sqrt_of(const Rational& q);

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  Rational rational_part() const;
  /// Value if rational, otherwise throws DomainError.
  Rational as_rational() const;

  RadicalScalar operator-() const;
  RadicalScalar& operator+=(const RadicalScalar& o);
  RadicalScalar& operator-=(const RadicalScalar& o);
  RadicalScalar& operator*=(const Rational& q);
  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
  friend RadicalScalar operator*(RadicalScalar a, const Rational& q) { return a *= q; }
  friend RadicalScalar operator*(const Rational& q, RadicalScalar a) { return a *= q; }
  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    return a.terms_ == b.terms_;
  }

  Real to_real() const;
  std::string to_string() const;

 private:
  void add_term(const BigInt& key, const Rational& q);
  Map terms_;
};

struct ApproxScalar {
  Real value;
  Real err;
};

/// Rounds to the given number of digits with a relative bound 10^(-digits).
ApproxScalar to_approx(const RadicalScalar& a, int digits);

/** Exact radical or approximate value; mixing promotes to approximate. */
class Scalar {
 public:
  Scalar() : v_(RadicalScalar{}) {}
  Scalar(const RadicalScalar& r) : v_(r) {}  // NOLINT(implicit)
  Scalar(const Rational& q) : v_(RadicalScalar(q)) {}  // NOLINT(implicit)
  Scalar(long v) : v_(RadicalScalar(Rational(v))) {}  // NOLINT(implicit)
  Scalar(const ApproxScalar& a) : v_(a) {}  // NOLINT(implicit)
  static Scalar approx(const Real& value, const Real& err) { return Scalar(ApproxScalar{value, err}); }

  bool is_exact() const { return std::holds_alternative<RadicalScalar>(v_); }
  const RadicalScalar& exact() const { return std::get<RadicalScalar>(v_); }
  ApproxScalar approx_value() const;
  /// True for exact zero, or approximate value whose interval is within err of 0 and value is 0.
  bool is_zero() const;
  bool is_rational() const { return is_exact() && exact().is_rational(); }
  Rational as_rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  /// Structural equality for exact values; approximate values compare by value and bound.
  friend bool operator==(const Scalar& a, const Scalar& b);

  Real to_real() const;
  double to_double() const;
  Real error_bound() const;
  std::string to_string() const;

 private:
  std::variant<RadicalScalar, ApproxScalar> v_;
};

/// |a − b| ≤ tol + err(a) + err(b).
bool approx_equal(const Scalar& a, const Scalar& b, double tol);

std::string real_string(const Real& x, int digits = 0);
Real parse_real(const std::string& s);

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j);

}  // namespace opeforge
