/** @file special.cpp
 *  @brief Digamma, hypergeometric series at unity, Dougall and characteristic sums. */
#include "opeforge/special.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

#include "opeforge/angular.hpp"
#include "opeforge/errors.hpp"

namespace opeforge {

// ---- digamma --------------------------------------------------------------

DigammaValue& DigammaValue::operator+=(const DigammaValue& o) {
  rational += o.rational;
  gamma_coeff += o.gamma_coeff;
  log2_coeff += o.log2_coeff;
  return *this;
}

DigammaValue& DigammaValue::operator-=(const DigammaValue& o) {
  rational -= o.rational;
  gamma_coeff -= o.gamma_coeff;
  log2_coeff -= o.log2_coeff;
  return *this;
}

DigammaValue& DigammaValue::operator*=(const Rational& q) {
  rational *= q;
  gamma_coeff *= q;
  log2_coeff *= q;
  return *this;
}

Real DigammaValue::to_real() const {
  ensure_real_precision();
  Real euler = boost::math::constants::euler<Real>();
  Real ln2 = boost::math::constants::ln_two<Real>();
  return opeforge::to_real(rational) + opeforge::to_real(gamma_coeff) * euler +
         opeforge::to_real(log2_coeff) * ln2;
}

DigammaValue digamma_exact(long twice_x) {
  if (twice_x <= 0) throw DomainError("digamma_exact needs a positive integer or half-integer");
  DigammaValue v{Rational(0), Rational(-1), Rational(0)};
  if (twice_x % 2 == 0) {
    long n = twice_x / 2 - 1;  // ψ(n+1) = −γ + H_n
    for (long k = 1; k <= n; ++k) v.rational += Rational(1, k);
    return v;
  }
  long n = (twice_x - 1) / 2;  // ψ(n+½) = −γ − 2 log 2 + 2 Σ 1/(2k−1)
  v.log2_coeff = -2;
  for (long k = 1; k <= n; ++k) v.rational += Rational(2, 2 * k - 1);
  return v;
}

Real digamma_real(const Real& x) {
  ensure_real_precision();
  return boost::math::digamma(x);
}

// ---- hypergeometric at unity ----------------------------------------------

Rational HyperParams::balance() const {
  Rational s = 0;
  for (const auto& b : lower) s += b;
  for (const auto& a : upper) s -= a;
  return s;
}

namespace {

bool nonpositive_integer(const Rational& q) { return bmp::denominator(q) == 1 && q <= 0; }

void check_params(const HyperParams& p) {
  if (p.upper.size() != p.lower.size() + 1)
    throw DomainError("at-unity evaluation needs p = q + 1 parameters");
  for (const auto& b : p.lower)
    if (nonpositive_integer(b)) throw DomainError("lower parameter is a nonpositive integer");
}

// Partial sums S_N = Σ_{n<N} t_n recorded at N0·2^i, i = 0..levels−1.
// Returns empty optional-like flag via terminating.
struct PartialSums {
  std::vector<Real> sums;
  bool terminated = false;
  Rational exact;
};

PartialSums partial_sums(const HyperParams& p, long N0, int levels) {
  PartialSums out;
  // terminating series: exact rational sum
  for (const auto& a : p.upper) {
    if (nonpositive_integer(a)) {
      long n = -bmp::numerator(a).convert_to<long>();
      Rational t = 1, s = 0;
      for (long k = 0; k <= n; ++k) {
        s += t;
        Rational num = 1, den = k + 1;
        for (const auto& u : p.upper) num *= (u + k);
        for (const auto& l : p.lower) den *= (l + k);
        t *= num / den;
        if (t == 0) break;
      }
      out.terminated = true;
      out.exact = s;
      return out;
    }
  }
  ensure_real_precision();
  std::vector<Real> up, lo;
  for (const auto& a : p.upper) up.push_back(to_real(a));
  for (const auto& b : p.lower) lo.push_back(to_real(b));
  Real t = 1, s = 0;
  long next = N0;
  long nmax = N0 << (levels - 1);
  for (long k = 0; k < nmax; ++k) {
    s += t;
    if (k + 1 == next) {
      out.sums.push_back(s);
      next *= 2;
    }
    Real num = 1, den = k + 1;
    for (const auto& u : up) num *= (u + k);
    for (const auto& l : lo) den *= (l + k);
    t *= num / den;
  }
  return out;
}

// Richardson on values at N0·2^i eliminating N^{-e_k}, e_k = e0 + k.
std::pair<Real, Real> richardson(const std::vector<Real>& v, const Real& e0) {
  std::vector<Real> cur = v;
  Real best = cur.back(), err = 0;
  Real prev_best = best;
  for (size_t m = 1; m < v.size(); ++m) {
    Real f = bmp::pow(Real(2), e0 + Real(m - 1));
    std::vector<Real> nxt;
    for (size_t i = 0; i + 1 < cur.size(); ++i) nxt.push_back((f * cur[i + 1] - cur[i]) / (f - 1));
    prev_best = cur.back();
    cur = std::move(nxt);
    best = cur.back();
    err = bmp::abs(best - prev_best);
  }
  return {best, err};
}

}  // namespace

ApproxScalar pfq_at_unity(const HyperParams& params, double tolerance) {
  check_params(params);
  Rational omega = params.balance();
  auto ps0 = partial_sums(params, 1, 1);
  if (ps0.terminated) return to_approx(RadicalScalar(ps0.exact), working_digits());
  if (omega <= 0)
    throw DivergenceError("series at unity diverges (balance " + rational_string(omega) +
                          " <= 0); use finite_part_L");
  Real e0 = to_real(omega);
  int levels = 8;
  while (true) {
    auto ps = partial_sums(params, 32, levels);
    auto [v, err] = richardson(ps.sums, e0);
    if (err < Real(tolerance) || levels >= 11) {
      Real floor = bmp::abs(v) * bmp::pow(Real(10), -working_digits());
      return {v, err + floor};
    }
    levels += 1;
  }
}

ApproxScalar finite_part_L(const HyperParams& params, double tolerance) {
  check_params(params);
  if (params.balance() != 0) throw DomainError("finite_part_L needs a zero-balanced series");
  ensure_real_precision();
  for (const auto& a : params.upper)
    if (nonpositive_integer(a)) throw DomainError("terminating series has no logarithmic divergence");
  Real logK = 0;
  for (const auto& a : params.upper) logK += boost::math::lgamma(to_real(a));
  for (const auto& b : params.lower) logK -= boost::math::lgamma(to_real(b));
  int sgn = 1;
  for (const auto& a : params.upper)
    if (a < 0 && bmp::floor(to_real(a)).convert_to<long>() % 2 != 0) sgn = -sgn;
  for (const auto& b : params.lower)
    if (b < 0 && bmp::floor(to_real(b)).convert_to<long>() % 2 != 0) sgn = -sgn;
  Real K = sgn * bmp::exp(logK);
  int levels = 9;
  Real euler = boost::math::constants::euler<Real>();
  while (true) {
    auto ps = partial_sums(params, 32, levels);
    std::vector<Real> vals;
    long N = 32;
    for (const auto& s : ps.sums) {
      vals.push_back(K * s - bmp::log(Real(N)));
      N *= 2;
    }
    auto [v, err] = richardson(vals, Real(1));
    if (err < Real(tolerance) || levels >= 12) return {v - euler, err + bmp::pow(Real(10), -working_digits())};
    levels += 1;
  }
}

ApproxScalar finite_part_L_3f2(const HyperParams& params) {
  if (params.upper.size() != 3 || params.lower.size() != 2) throw DomainError("finite_part_L_3f2 needs a 3F2");
  if (params.balance() != 0) throw DomainError("finite_part_L_3f2 needs a zero-balanced series");
  const auto& a = params.upper;
  const auto& b = params.lower;
  // pick a positive α3 so the auxiliary ₄F₃ converges
  int i3 = 2;
  while (i3 >= 0 && a[i3] <= 0) --i3;
  if (i3 < 0) throw DomainError("finite_part_L_3f2 needs a positive upper parameter");
  std::vector<Rational> rest;
  for (int i = 0; i < 3; ++i)
    if (i != i3) rest.push_back(a[i]);
  const Rational& a1 = rest[0];
  const Rational& a2 = rest[1];
  const Rational& a3 = a[i3];
  ensure_real_precision();
  Real L = 2 * digamma_real(Real(1)) - digamma_real(to_real(a1)) - digamma_real(to_real(a2));
  Rational pre = (b[0] - a3) * (b[1] - a3) / (a1 * a2);
  Real err = 0;
  if (pre != 0) {
    HyperParams h{{b[0] - a3 + 1, b[1] - a3 + 1, Rational(1), Rational(1)}, {a1 + 1, a2 + 1, Rational(2)}};
    auto f = pfq_at_unity(h);
    L += to_real(pre) * f.value;
    err = bmp::abs(to_real(pre)) * f.err;
  }
  return {L, err + bmp::pow(Real(10), -working_digits())};
}

// ---- Dougall --------------------------------------------------------------

double dougall_rhs(double nu, double y) {
  if (std::abs(nu - std::round(nu)) < 1e-12) throw DomainError("dougall_rhs needs non-integer nu");
  if (!(y > -1.0 && y < 1.0)) throw DomainError("dougall_rhs needs y in (-1,1)");
  // P_ν(−y) = ₂F₁(−ν, ν+1; 1; (1+y)/2)
  double z = 0.5 * (1.0 + y);
  double t = 1.0, s = 0.0;
  for (int k = 0; k < 100000; ++k) {
    s += t;
    t *= (-nu + k) * (nu + 1 + k) / ((k + 1.0) * (k + 1.0)) * z;
    if (std::abs(t) < 1e-18 * std::max(1.0, std::abs(s)) && k > 10) break;
  }
  return M_PI / std::sin(M_PI * nu) * s;
}

double dougall_lhs_partial(double nu, double y, int N) {
  auto P = legendre_values(N, y);
  double s = 0.0, nn = nu * (nu + 1.0);
  for (int k = 0; k <= N; ++k) s += (2.0 * k + 1.0) * P[k] / (nn - k * (k + 1.0));
  return s;
}

// ---- characteristic sums --------------------------------------------------

std::string CharSumResult::tag() const {
  switch (method) {
    case 1: return "i: odd parity inside triangle";
    case 2: return "ii: odd parity outside triangle (gamma ratio)";
    case 3: return "iii: even parity outside triangle (log integral)";
    case 4: return "iv: even parity inside triangle (general formula)";
    default: return "unknown";
  }
}

Rational char_sum_bruteforce(int l1, int l2, int a) {
  if (l1 < 0 || l2 < 0 || a < 0) throw InputError("negative label in char_sum");
  Rational s = 0;
  long aa = static_cast<long>(a) * (a + 1);
  for (int J = std::abs(l1 - l2); J <= l1 + l2; ++J) {
    if (J == a) continue;
    Rational w = parity_cg_squared(l1, l2, J);
    if (w == 0) continue;
    s += w / Rational(aa - static_cast<long>(J) * (J + 1));
  }
  return s;
}

namespace {

// ∫_{-1}^{1} y^n log(1−y) dy = Σ_k C(n,k)(−1)^k 2^{k+1} (log2/(k+1) − 1/(k+1)²)
std::pair<Rational, Rational> monomial_log_integral(int n) {
  Rational rat = 0, l2 = 0;
  for (int k = 0; k <= n; ++k) {
    Rational w = binomial(n, k) * Rational(BigInt(1) << (k + 1));
    if (k % 2) w = -w;
    l2 += w / (k + 1);
    rat -= w / Rational((k + 1) * (k + 1));
  }
  return {rat, l2};
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

std::pair<Rational, Rational> legendre_log_integral(int l1, int l2, int a) {
  auto p = poly_mul(poly_mul(legendre_coefficients(l1), legendre_coefficients(l2)), legendre_coefficients(a));
  Rational rat = 0, l2c = 0;
  for (size_t n = 0; n < p.size(); ++n) {
    if (p[n] == 0) continue;
    auto [r, l] = monomial_log_integral(static_cast<int>(n));
    rat += p[n] * r;
    l2c += p[n] * l;
  }
  return {rat, l2c};
}

CharSumResult char_sum(int l1, int l2, int a) {
  if (l1 < 0 || l2 < 0 || a < 0) throw InputError("negative label in char_sum");
  bool inside = a >= std::abs(l1 - l2) && a <= l1 + l2;
  bool odd = (l1 + l2 + a) % 2 != 0;
  CharSumResult r;
  if (odd && inside) {
    r.method = 1;
    return r;
  }
  if (odd) {
    // S = −½ ∫ P P Q_a
    r.method = 2;
    r.value = Scalar(legendre_pq_integral(l1, l2, a) * Rational(-1, 2));
    return r;
  }
  if (!inside) {
    r.method = 3;
    auto [rat, l2c] = legendre_log_integral(l1, l2, a);
    if (l2c != 0) throw IntegrityError("char_sum case iii: log 2 did not cancel");
    Rational s = a > l1 + l2 ? Rational(-rat / 2) : Rational(rat / 2);
    r.value = Scalar(s);
    return r;
  }
  // even parity inside the triangle
  r.method = 4;
  Rational total = 0;
  long aa = static_cast<long>(a) * (a + 1);
  for (int k = 0; k < a; ++k) {
    Rational t = legendre_triple_integral(l1, l2, k);
    if (t == 0) continue;
    total += 2 * Rational(2 * k + 1) * t / Rational(aa - static_cast<long>(k) * (k + 1));
  }
  auto [lrat, ll2] = legendre_log_integral(l1, l2, a);
  Rational ppp = legendre_triple_integral(l1, l2, a);
  DigammaValue psi = digamma_exact(4L * a + 4);
  psi += digamma_exact(4L * a + 2);
  DigammaValue two_psi = digamma_exact(2L * a + 2);
  two_psi *= 2;
  psi -= two_psi;
  if (psi.gamma_coeff != 0 || psi.log2_coeff != 0) throw IntegrityError("char_sum case iv: symbols did not cancel");
  Rational log2_total = ll2 - ppp;  // log((1−y)/2) = log(1−y) − log 2
  if (log2_total != 0) throw IntegrityError("char_sum case iv: log 2 did not cancel");
  total += lrat + psi.rational * ppp;
  r.value = Scalar(total / 2);
  return r;
}

}  // namespace opeforge
