/** @file angular.cpp
 *  @brief Exact angular-momentum algebra and numeric harmonics. */
#include "opeforge/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "opeforge/errors.hpp"

namespace opeforge {

namespace {

const BigInt& fact(int n) {
  thread_local std::vector<BigInt> cache{BigInt(1)};
  if (n < 0) throw DomainError("negative factorial");
  while (static_cast<int>(cache.size()) <= n) cache.push_back(cache.back() * BigInt(cache.size()));
  return cache[n];
}

struct CgKey {
  std::array<int, 6> v;
  bool operator==(const CgKey&) const = default;
};
struct CgKeyHash {
  size_t operator()(const CgKey& k) const noexcept {
    size_t h = 1469598103934665603ull;
    for (int x : k.v) h = (h ^ static_cast<size_t>(x + 4096)) * 1099511628211ull;
    return h;
  }
};

std::shared_mutex g_cg_mutex;
std::unordered_map<CgKey, RadicalScalar, CgKeyHash> g_cg_cache;

bool triangle(int a, int b, int c) { return c >= std::abs(a - b) && c <= a + b; }

RadicalScalar racah_cg(int j1, int m1, int j2, int m2, int J, int M) {
  // prefactor under the root
  Rational pre = Rational(BigInt(2 * J + 1) * fact(J + j1 - j2) * fact(J - j1 + j2) * fact(j1 + j2 - J),
                          fact(j1 + j2 + J + 1));
  pre *= Rational(fact(J + M) * fact(J - M) * fact(j1 - m1) * fact(j1 + m1) * fact(j2 - m2) * fact(j2 + m2));
  Rational sum = 0;
  int kmin = std::max({0, j2 - J - m1, j1 - J + m2});
  int kmax = std::min({j1 + j2 - J, j1 - m1, j2 + m2});
  for (int k = kmin; k <= kmax; ++k) {
    BigInt den = fact(k) * fact(j1 + j2 - J - k) * fact(j1 - m1 - k) * fact(j2 + m2 - k) *
                 fact(J - j2 + m1 + k) * fact(J - j1 - m2 + k);
    Rational t(BigInt(1), den);
    if (k % 2) t = -t;
    sum += t;
  }
  return RadicalScalar::sqrt_of(pre) * sum;
}

void check_label(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw InputError("invalid angular label l=" + std::to_string(l) + " m=" + std::to_string(m));
}

}  // namespace

RadicalScalar clebsch_gordan(int l1, int m1, int l2, int m2, int J, int M) {
  check_label(l1, m1);
  check_label(l2, m2);
  check_label(J, M);
  if (M != m1 + m2 || !triangle(l1, l2, J)) return {};
  CgKey key{{l1, m1, l2, m2, J, M}};
  {
    std::shared_lock lk(g_cg_mutex);
    auto it = g_cg_cache.find(key);
    if (it != g_cg_cache.end()) return it->second;
  }
  RadicalScalar v = racah_cg(l1, m1, l2, m2, J, M);
  std::unique_lock lk(g_cg_mutex);
  g_cg_cache.emplace(key, v);
  return v;
}

RadicalScalar parity_cg(int l1, int l2, int J) {
  if (l1 < 0 || l2 < 0 || J < 0) return {};
  if ((l1 + l2 + J) % 2 || !triangle(l1, l2, J)) return {};
  int g = (l1 + l2 + J) / 2;
  // CG² = (2J+1)/(2π) Γ(g-J+½)Γ(g-l2+½)Γ(g-l1+½)Γ(g+1) / (Γ(g-J+1)Γ(g-l2+1)Γ(g-l1+1)Γ(g+3/2))
  const long num[] = {2L * (g - J) + 1, 2L * (g - l2) + 1, 2L * (g - l1) + 1, 2L * g + 2};
  const long den[] = {2L * (g - J) + 2, 2L * (g - l2) + 2, 2L * (g - l1) + 2, 2L * g + 3};
  Rational r = Rational(2 * J + 1, 2);
  int pis = -2;
  for (long x : num) {
    auto h = gamma_half(x);
    r *= h.rat;
    pis += h.sqrt_pi_power;
  }
  for (long x : den) {
    auto h = gamma_half(x);
    r /= h.rat;
    pis -= h.sqrt_pi_power;
  }
  if (pis != 0) throw IntegrityError("parity_cg: residual powers of pi");
  RadicalScalar v = RadicalScalar::sqrt_of(r);
  return ((g - J) % 2) ? -v : v;
}

Rational parity_cg_squared(int l1, int l2, int J) {
  if (l1 < 0 || l2 < 0 || J < 0) return 0;
  int s = l1 + l2 + J;
  if (s % 2 || !triangle(l1, l2, J)) return 0;
  int g = s / 2;
  Rational t(fact(s - 2 * l1) * fact(s - 2 * l2) * fact(s - 2 * J), fact(s + 1));
  Rational u(fact(g), fact(g - l1) * fact(g - l2) * fact(g - J));
  return t * u * u * Rational(2 * J + 1);
}

RadicalScalar wigner3j(int j1, int j2, int J, int m1, int m2, int M) {
  check_label(j1, m1);
  check_label(j2, m2);
  check_label(J, M);
  if (m1 + m2 + M != 0 || !triangle(j1, j2, J)) return {};
  RadicalScalar cg = clebsch_gordan(j1, m1, j2, m2, J, -M);
  RadicalScalar v = cg * RadicalScalar::sqrt_of(Rational(1, 2 * J + 1));
  return ((j1 - j2 - M) % 2) ? -v : v;
}

CouplingResult couple_product(const CouplingResult& a, const CouplingResult& b) {
  CouplingResult out;
  for (const auto& [ka, va] : a) {
    for (const auto& [kb, vb] : b) {
      if (kb.J == 0) {
        out[ka] += va * vb;
        continue;
      }
      if (ka.J == 0) {
        out[kb] += va * vb;
        continue;
      }
      int M = ka.M + kb.M;
      RadicalScalar vab = va * vb;
      for (int L = std::max(std::abs(ka.J - kb.J), std::abs(M)); L <= ka.J + kb.J; ++L) {
        if ((ka.J + kb.J + L) % 2) continue;
        RadicalScalar w = clebsch_gordan(ka.J, ka.M, kb.J, kb.M, L, M) * parity_cg(ka.J, kb.J, L);
        if (w.is_zero()) continue;
        out[JM{L, M}] += vab * w;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

namespace {
CouplingResult single_mode(const SignedMode& s) {
  // S^{lm} = (-1)^m S_{l,-m}
  if (s.creation()) {
    int m = s.mode.m;
    return {{JM{s.mode.l, -m}, RadicalScalar(Rational((m % 2) ? -1 : 1))}};
  }
  return {{JM{s.mode.l, s.mode.m}, RadicalScalar(Rational(1))}};
}
}  // namespace

CouplingResult couple_tensor(const std::vector<SignedMode>& sequence) {
  CouplingResult acc{{JM{0, 0}, RadicalScalar(Rational(1))}};
  for (const auto& s : sequence) {
    if (!s.mode.valid()) throw InputError("invalid mode " + s.to_string());
    if (s.mode.l == 0) continue;  // zero entries may be dropped
    acc = couple_product(acc, single_mode(s));
  }
  return acc;
}

CouplingResult couple_tensor_canonical(const ModeMultiset& multiset, bool contraction) {
  ModeMultiset work = multiset;
  if (contraction) {
    for (const auto& [x, c] : multiset.items()) {
      if (!x.creation()) continue;
      SignedMode partner{Sign::Minus, x.mode};
      int pairs = std::min(c, multiset.count(partner));
      if (pairs > 0) {
        work.remove(x, pairs);
        work.remove(partner, pairs);
      }
    }
  }
  std::vector<SignedMode> seq = work.elements();
  std::stable_sort(seq.begin(), seq.end(),
                   [](const SignedMode& a, const SignedMode& b) { return a.mode.l > b.mode.l; });
  return couple_tensor(seq);
}

// ---- Legendre -------------------------------------------------------------

const std::vector<Rational>& legendre_coefficients(int l) {
  static std::mutex mu;
  static std::deque<std::vector<Rational>> cache;  // deque: returned references stay valid
  std::lock_guard lk(mu);
  if (cache.empty()) {
    cache.push_back({Rational(1)});
    cache.push_back({Rational(0), Rational(1)});
  }
  while (static_cast<int>(cache.size()) <= l) {
    int n = static_cast<int>(cache.size()) - 1;  // build P_{n+1}
    const auto& p = cache[n];
    const auto& q = cache[n - 1];
    std::vector<Rational> r(n + 2, Rational(0));
    // (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
    for (size_t i = 0; i < p.size(); ++i) r[i + 1] += Rational(2 * n + 1) * p[i];
    for (size_t i = 0; i < q.size(); ++i) r[i] -= Rational(n) * q[i];
    for (auto& c : r) c /= (n + 1);
    cache.push_back(std::move(r));
  }
  return cache[l];
}

Rational legendre_triple_integral(int l1, int l2, int J) {
  if (l1 < 0 || l2 < 0 || J < 0) throw InputError("negative Legendre degree");
  if ((l1 + l2 + J) % 2) return 0;
  std::vector<Rational> a = legendre_coefficients(l1), b = legendre_coefficients(l2),
                        c = legendre_coefficients(J);
  std::vector<Rational> ab(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (size_t j = 0; j < b.size(); ++j) ab[i + j] += a[i] * b[j];
  Rational s = 0;
  for (size_t i = 0; i < ab.size(); ++i) {
    if (ab[i] == 0) continue;
    for (size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0 || (i + j) % 2) continue;
      s += ab[i] * c[j] * Rational(2, static_cast<long>(i + j + 1));
    }
  }
  return s;
}

Rational pq_gamma_ratio(int l1, int l2, int j) {
  // G = Γ(j+½)Γ(j+l1+1)Γ(j+l2+1)Γ(j+l1+l2+3/2) / (2Γ(j+1)Γ(j+l1+3/2)Γ(j+l2+3/2)Γ(j+l1+l2+2))
  const long num[] = {2L * j + 1, 2L * (j + l1) + 2, 2L * (j + l2) + 2, 2L * (j + l1 + l2) + 3};
  const long den[] = {2L * j + 2, 2L * (j + l1) + 3, 2L * (j + l2) + 3, 2L * (j + l1 + l2) + 4};
  Rational r(1, 2);
  int pis = 0;
  for (long x : num) {
    auto h = gamma_half(x);
    r *= h.rat;
    pis += h.sqrt_pi_power;
  }
  for (long x : den) {
    auto h = gamma_half(x);
    r /= h.rat;
    pis -= h.sqrt_pi_power;
  }
  if (pis != 0) throw IntegrityError("pq_gamma_ratio: residual powers of pi");
  return r;
}

RadicalScalar legendre_pq_integral(int l1, int l2, int a) {
  if (l1 < 0 || l2 < 0 || a < 0) throw InputError("negative Legendre degree");
  if ((l1 + l2 + a) % 2 == 0) throw DomainError("legendre_pq_integral needs odd l1+l2+a");
  if (triangle(l1, l2, a)) return {};
  if (a > l1 + l2) return RadicalScalar(-pq_gamma_ratio(l1, l2, (a - l1 - l2 - 1) / 2));
  int lo = std::min(l1, l2), hi = std::max(l1, l2);
  return RadicalScalar(pq_gamma_ratio(lo, a, (hi - lo - a - 1) / 2));
}

DimConstants dim_constants(int l, int D) {
  if (D < 3) throw DomainError("dimension must be at least 3");
  if (l < 0) throw InputError("negative l");
  DimConstants out;
  if (l == 0) {
    out.N = 1;
  } else {
    Rational n = Rational(2 * l + D - 2) * factorial(l + D - 3) / (factorial(D - 2) * factorial(l));
    out.N = bmp::numerator(n);
  }
  // c_l² = 2^{l-1} Γ(l+D/2) / (l! π^{D/2})
  auto g = gamma_half(2L * l + D);
  Rational c2 = g.rat / factorial(l);
  if (l >= 1)
    c2 *= Rational(BigInt(1) << (l - 1));
  else
    c2 /= 2;
  out.c_l_coeff = RadicalScalar::sqrt_of(c2);
  // π exponent: (sqrt_pi_power/2 - D/2)/2
  out.c_l_pi_power = Rational(g.sqrt_pi_power - D, 4);
  // F(l)² = Γ(D/2-1) / (2^l l! Γ(l+D/2-1))
  auto ga = gamma_half(D - 2);
  auto gb = gamma_half(2L * l + D - 2);
  if (ga.sqrt_pi_power != gb.sqrt_pi_power) throw IntegrityError("F(l): mismatched pi powers");
  Rational f2 = ga.rat / (Rational(BigInt(1) << l) * factorial(l) * gb.rat);
  out.F = RadicalScalar::sqrt_of(f2);
  return out;
}

// ---- numeric harmonics ----------------------------------------------------

std::vector<std::complex<double>> harmonics_table(int L, double theta, double phi) {
  std::vector<std::complex<double>> out((L + 1) * (L + 1));
  double x = std::cos(theta), s = std::sin(theta);
  std::vector<double> pb(L + 1);  // normalized P̄_l^m for fixed m
  double pmm = 1.0;               // P̄_m^m
  for (int m = 0; m <= L; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m - 1.0) / (2.0 * m)) * s;
    pb[m] = pmm;
    if (m + 1 <= L) pb[m + 1] = std::sqrt(2.0 * m + 1.0) * x * pmm;
    for (int l = m + 2; l <= L; ++l) {
      pb[l] = ((2.0 * l - 1.0) * x * pb[l - 1] -
               std::sqrt((l - 1.0 - m) * (l - 1.0 + m)) * pb[l - 2]) /
              std::sqrt((double)(l - m) * (l + m));
    }
    std::complex<double> e = std::polar(1.0, m * phi);
    for (int l = m; l <= L; ++l) {
      std::complex<double> v = pb[l] * e;
      out[l * (l + 1) + m] = v;
      if (m > 0) out[l * (l + 1) - m] = ((m % 2) ? -1.0 : 1.0) * std::conj(v);
    }
  }
  return out;
}

std::complex<double> harmonic(int l, int m, double theta, double phi) {
  check_label(l, m);
  return harmonics_table(l, theta, phi)[l * (l + 1) + m];
}

std::vector<double> legendre_values(int N, double x) {
  std::vector<double> p(N + 1);
  p[0] = 1.0;
  if (N >= 1) p[1] = x;
  for (int n = 1; n < N; ++n) p[n + 1] = ((2.0 * n + 1.0) * x * p[n] - n * p[n - 1]) / (n + 1.0);
  return p;
}

std::vector<long double> legendre_values_ld(int N, long double x) {
  std::vector<long double> p(N + 1);
  p[0] = 1.0L;
  if (N >= 1) p[1] = x;
  for (int n = 1; n < N; ++n) p[n + 1] = ((2.0L * n + 1.0L) * x * p[n] - n * p[n - 1]) / (n + 1.0L);
  return p;
}

}  // namespace opeforge
