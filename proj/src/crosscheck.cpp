/** @file crosscheck.cpp
 *  @brief Customary versus factorized evaluation of the order-g three-point coefficient. */
#include "opeforge/crosscheck.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "opeforge/angular.hpp"
#include "opeforge/errors.hpp"
#include "opeforge/ope.hpp"

namespace opeforge {

void ThreePointConfig::validate() const {
  if (!(s > 0 && s < 1)) throw InputError("crosscheck: s must lie in (0,1)");
  if (!(c >= -1 && c <= 1)) throw InputError("crosscheck: c must lie in [-1,1]");
  if (!(r23 > 0) || !(mu > 0)) throw InputError("crosscheck: r23 and mu must be positive");
  if (N < 0 || full_m_max < 0) throw InputError("crosscheck: N and full_m_max must be non-negative");
}

double customary_3pt(const ThreePointConfig& cfg) {
  cfg.validate();
  auto P = legendre_values(cfg.N + 1, cfg.c);
  double sum = 0, sp = cfg.s;
  for (int n = 0; n <= cfg.N; ++n, sp *= cfg.s) sum += sp / (n + 1) * (P[n] - P[n + 1]);
  return 10.0 * (sum + std::log(cfg.mu * cfg.mu * cfg.r23 * cfg.r23) - 2.0);
}

double customary_quadrature(const ThreePointConfig& cfg) {
  cfg.validate();
  using boost::math::quadrature::gauss_kronrod;
  const auto P = legendre_values(cfg.N, cfg.c);
  const double r23 = cfg.r23, r13 = cfg.s * r23, s = cfg.s;
  // Radial integrand r·(angular average of 1/(|y−x13||y−x23|)) in the three shells.
  auto inner = [&](double r) {
    double x = r * r / (r13 * r23), v = 0, xp = 1;
    for (int n = 0; n <= cfg.N; ++n, xp *= x) {
      v += P[n] / (2 * n + 1) * xp;
      if (xp < 1e-300) break;
    }
    return r / (r13 * r23) * v;
  };
  auto middle = [&](double) {
    double v = 0, sp = 1;
    for (int n = 0; n <= cfg.N; ++n, sp *= s) v += P[n] / (2 * n + 1) * sp;
    return v / r23;
  };
  // Outer shell in u = r23/r with the n = 0 log(Λ/r23) removed.
  auto outer = [&](double u) {
    double x = s * u * u, v = 0, xp = x;
    for (int n = 1; n <= cfg.N; ++n, xp *= x) {
      v += P[n] / (2 * n + 1) * xp;
      if (std::abs(xp) < 1e-300) break;
    }
    return u > 0 ? v / u : 0.0;
  };
  double I1 = gauss_kronrod<double, 61>::integrate(inner, 0.0, r13, 15, 1e-14);
  double I2 = gauss_kronrod<double, 61>::integrate(middle, r13, r23, 15, 1e-14);
  double I3 = gauss_kronrod<double, 61>::integrate(outer, 0.0, 1.0, 15, 1e-14);
  double Q = I1 + I2 + I3 - std::log(r23);
  return -20.0 * Q + 20.0 * std::log(cfg.mu);
}

namespace {

MultiIndex with_mode(int phi_power, int n, int m) {
  MultiIndex a = MultiIndex::phi_power(phi_power);
  a.add(AngularLabel{n, m});
  return a;
}

RingElement upper(const Scalar& s, int d, int p, int l, int m) {
  // S^{lm} = (−1)^m S_{l,−m}
  return RingElement::term((m % 2) ? -s : s, d, p, l, -m);
}

struct FamilyEntry {
  RingElement c13;  // coefficient evaluated at x13
  RingElement c23;  // coefficient evaluated at x23
};

RingElement fetch(int order, const MultiIndex& a, const MultiIndex& c) {
  CoefficientQuery q{order, 1, a, c};
  auto res = compute_coefficient(q);
  if (res.status == CoefficientStatus::Unsupported)
    throw IntegrityError("crosscheck: coefficient " + q.to_string() + " is unsupported");
  return res.value;
}

void expect_equal(const RingElement& got, const RingElement& want, const std::string& what) {
  if (!(got == want))
    throw IntegrityError("crosscheck: fetched " + what + " = " + got.to_string() +
                         " differs from closed form " + want.to_string());
}

/// The two products of the factorization sum at (n, m), verified against their closed forms.
std::pair<FamilyEntry, FamilyEntry> families(int n, int m) {
  const Scalar one(Rational(1));
  const bool n0 = n == 0;
  // C₁^{(∂ⁿφ)φ³}_{φφ}
  RingElement c1_up = fetch(1, MultiIndex::phi_power(1), with_mode(3, n, m));
  expect_equal(c1_up,
               upper(Scalar(n0 ? Rational(5, 2) : Rational(10, n + 1)), n + 1, 0, n, m),
               "C1^{(d^n phi)phi^3}_{phi phi}");
  // C₀^{φ³}_{φ,(∂ⁿφ)φ³}
  RingElement c0_down = fetch(0, with_mode(3, n, m), MultiIndex::phi_power(3));
  expect_equal(c0_down, RingElement::term(Scalar(Rational(n0 ? 4 : 1)), -n - 1, 0, n, m),
               "C0^{phi^3}_{phi,(d^n phi)phi^3}");
  // C₀^{(∂ⁿφ)φ}_{φφ}
  RingElement c0_up = fetch(0, MultiIndex::phi_power(1), with_mode(1, n, m));
  expect_equal(c0_up, upper(one, n, 0, n, m), "C0^{(d^n phi)phi}_{phi phi}");
  // C₁^{φ³}_{φ,(∂ⁿφ)φ}
  RingElement c1_down = fetch(1, with_mode(1, n, m), MultiIndex::phi_power(3));
  expect_equal(c1_down,
               n0 ? RingElement::term(Scalar(Rational(20)), 0, 1, 0, 0)
                  : RingElement::term(Scalar(Rational(-10, n)), -n, 0, n, m),
               "C1^{phi^3}_{phi,(d^n phi)phi}");
  return {FamilyEntry{c1_up, c0_down}, FamilyEntry{c0_up, c1_down}};
}

/// Radial profile of an m = 0 coefficient: Σ c r^d (log r)^p over its single harmonic S_{n0}.
double radial(const RingElement& e, int n, double r) {
  double v = 0, lr = std::log(r);
  for (const auto& [k, c] : e.terms()) {
    if (k.ladder || k.J != n || k.M != 0 || k.pmu != 0)
      throw IntegrityError("crosscheck: unexpected harmonic content in " + e.to_string());
    v += c.to_double() * std::pow(r, k.d) * std::pow(lr, k.p);
  }
  return v;
}

/// Evaluates against a precomputed harmonics table of the direction.
std::complex<double> eval_with(const RingElement& e, double r,
                               const std::vector<std::complex<double>>& Y) {
  std::complex<double> v = 0;
  double lr = std::log(r);
  for (const auto& [k, c] : e.terms())
    v += c.to_double() * std::pow(r, k.d) * std::pow(lr, k.p) * Y[k.J * (k.J + 1) + k.M];
  return v;
}

// Radial profiles per n, shared across grid points (live values, fetched once).
struct Profiles {
  std::vector<std::pair<FamilyEntry, FamilyEntry>> m0;
};
std::mutex profiles_mutex;
Profiles profiles;

const std::pair<FamilyEntry, FamilyEntry>& m0_families(int n) {
  std::lock_guard<std::mutex> lock(profiles_mutex);
  while (static_cast<int>(profiles.m0.size()) <= n)
    profiles.m0.push_back(families(static_cast<int>(profiles.m0.size()), 0));
  return profiles.m0[n];
}

}  // namespace

void verify_factorization_families(int nmax, int full_m_max) {
  for (int n = 0; n <= nmax; ++n) {
    if (n <= full_m_max)
      for (int m = -n; m <= n; ++m) families(n, m);
    else
      m0_families(n);
  }
}

double factorized_3pt_bruteforce(const ThreePointConfig& cfg) {
  ThreePointConfig full = cfg;
  full.full_m_max = cfg.N;
  return factorized_3pt(full);
}

double factorized_3pt(const ThreePointConfig& cfg) {
  cfg.validate();
  const double r13 = cfg.s * cfg.r23, r23 = cfg.r23;
  const double th13 = std::acos(cfg.c);
  auto P = legendre_values(cfg.N, cfg.c);
  const int L = std::min(cfg.N, cfg.full_m_max);
  const auto Y13 = harmonics_table(L, th13, 0.0), Y23 = harmonics_table(L, 0.0, 0.0);
  double sum = 0;
  for (int n = 0; n <= cfg.N; ++n) {
    if (n <= cfg.full_m_max) {
      for (int m = -n; m <= n; ++m) {
        auto [first, second] = families(n, m);
        auto t = eval_with(first.c13, r13, Y13) * eval_with(first.c23, r23, Y23) +
                 eval_with(second.c13, r13, Y13) * eval_with(second.c23, r23, Y23);
        sum += t.real();
      }
    } else {
      // Σ_m S^{nm}(x̂13) S_{nm}(x̂23) = P_n(c); the m = 0 profiles carry the n-dependence.
      const auto& [first, second] = m0_families(n);
      double a = radial(first.c13, n, r13) * radial(first.c23, n, r23) +
                 radial(second.c13, n, r13) * radial(second.c23, n, r23);
      sum += a * P[n];
    }
  }
  return sum;
}

nlohmann::json CompareReport::to_json() const {
  return {{"grid", {{"s", s_values}, {"c", c_values}, {"N", N}, {"points", points}}},
          {"constant_estimate", constant_estimate},
          {"expected_offset", expected_offset},
          {"max_deviation", max_deviation},
          {"tail_bound", tail_bound},
          {"tolerance", tolerance},
          {"worst", {{"s", worst_s}, {"c", worst_c}}},
          {"pass", passed}};
}

std::vector<ThreePointConfig> default_grid(int N, double mu) {
  std::vector<ThreePointConfig> g;
  for (int i = 1; i <= 8; ++i)
    for (int j = -9; j <= 9; ++j) {
      ThreePointConfig c;
      c.s = i / 10.0;
      c.c = j / 10.0;
      c.N = N;
      c.mu = mu;
      g.push_back(c);
    }
  return g;
}

CompareReport compare(const std::vector<ThreePointConfig>& grid, double tolerance) {
  CompareReport rep;
  rep.tolerance = tolerance;
  rep.passed = true;
  double sum_diff = 0;
  for (const auto& cfg : grid) {
    double offset = 10.0 * (std::log(cfg.mu * cfg.mu) - 2.0);
    double diff = customary_3pt(cfg) - factorized_3pt(cfg);
    double dev = std::abs(diff - offset);
    sum_diff += diff;
    if (std::find(rep.s_values.begin(), rep.s_values.end(), cfg.s) == rep.s_values.end())
      rep.s_values.push_back(cfg.s);
    if (std::find(rep.c_values.begin(), rep.c_values.end(), cfg.c) == rep.c_values.end())
      rep.c_values.push_back(cfg.c);
    rep.N = std::max(rep.N, cfg.N);
    // Both series are truncated at N; their remainders are bounded by geometric tails.
    double tail = 20.0 * std::pow(cfg.s, cfg.N + 1) / ((cfg.N + 1) * (1.0 - cfg.s));
    rep.expected_offset = offset;
    rep.tail_bound = std::max(rep.tail_bound, tail);
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_s = cfg.s;
      rep.worst_c = cfg.c;
    }
    if (dev > tolerance + tail) rep.passed = false;
    ++rep.points;
  }
  if (rep.points) rep.constant_estimate = sum_diff / rep.points;
  return rep;
}

}  // namespace opeforge
