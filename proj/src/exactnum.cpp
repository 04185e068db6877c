/** @file exactnum.cpp
 *  @brief Exact scalar arithmetic and guarded approximation. */
#include "opeforge/exactnum.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "opeforge/errors.hpp"

namespace opeforge {

namespace {

std::atomic<int> g_digits{0};

int digits_from_env() {
  if (const char* e = std::getenv("OPE_FORGE_PRECISION")) {
    try {
      int v = std::stoi(e);
      if (v >= 16) return v;
    } catch (...) {
    }
  }
  return 50;
}

// Trial division bound for squarefree extraction. Radicands produced by the
// CG machinery are products of small factorials, so this is never the limit.
constexpr unsigned long kTrialBound = 100000;

}  // namespace

int working_digits() {
  int d = g_digits.load();
  if (d == 0) {
    d = digits_from_env();
    g_digits.store(d);
  }
  return d;
}

void set_working_digits(int digits) {
  if (digits < 16) throw InputError("precision must be at least 16 digits");
  g_digits.store(digits);
  ensure_real_precision();
}

void ensure_real_precision() {
  thread_local int applied = 0;
  int want = working_digits() + 10;
  if (applied != want) {
    Real::default_precision(want);
    applied = want;
  }
}

Rational ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw InputError("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InputError("malformed rational '" + s + "'");
  }
}

std::string rational_string(const Rational& q) {
  std::string n = bmp::numerator(q).str();
  BigInt d = bmp::denominator(q);
  if (d == 1) return n;
  return n + "/" + d.str();
}

Real to_real(const Rational& q) {
  ensure_real_precision();
  return Real(bmp::numerator(q)) / Real(bmp::denominator(q));
}

Rational factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return Rational(r);
}

HalfGamma gamma_half(long twice_x) {
  if (twice_x <= 0) throw DomainError("gamma_half needs a positive argument");
  if (twice_x % 2 == 0) return {factorial(static_cast<unsigned>(twice_x / 2 - 1)), 0};
  // Γ(n + 1/2) = (2n)! / (4^n n!) √π
  unsigned n = static_cast<unsigned>((twice_x - 1) / 2);
  BigInt four_n = 1;
  for (unsigned i = 0; i < n; ++i) four_n *= 4;
  return {factorial(2 * n) / (Rational(four_n) * factorial(n)), 1};
}

std::pair<BigInt, BigInt> squarefree_split(const BigInt& n) {
  if (n <= 0) throw InputError("radicand must be positive");
  BigInt rest = n, root = 1, sf = 1;
  for (unsigned long p = 2; p <= kTrialBound && BigInt(p) * p <= rest; ++p) {
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) root *= p;
    if (e % 2) sf *= p;
  }
  if (rest > 1) {
    BigInt s = bmp::sqrt(rest);
    if (s * s == rest)
      root *= s;
    else
      sf *= rest;
  }
  return {sf, root};
}

// ---- RadicalScalar --------------------------------------------------------

RadicalScalar::RadicalScalar(const Rational& q) {
  if (q != 0) terms_.emplace(BigInt(1), q);
}

void RadicalScalar::add_term(const BigInt& key, const Rational& q) {
  if (q == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, q);
    return;
  }
  it->second += q;
  if (it->second == 0) terms_.erase(it);
}

RadicalScalar RadicalScalar::normalize(const std::vector<std::pair<BigInt, Rational>>& raw) {
  RadicalScalar out;
  for (const auto& [k, q] : raw) {
    if (k <= 0) throw InputError("radical key must be positive, got " + k.str());
    auto [sf, root] = squarefree_split(k);
    out.add_term(sf, q * Rational(root));
  }
  return out;
}

RadicalScalar RadicalScalar::sqrt_of(const Rational& q) {
  if (q < 0) throw DomainError("square root of negative rational");
  if (q == 0) return {};
  BigInt num = bmp::numerator(q), den = bmp::denominator(q);
  // √(n/d) = √(n d)/d
  return normalize({{num * den, Rational(1, 1) / Rational(den)}});
}

bool RadicalScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational RadicalScalar::rational_part() const {
  auto it = terms_.find(BigInt(1));
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational RadicalScalar::as_rational() const {
  if (!is_rational()) throw DomainError("scalar is irrational: " + to_string());
  return rational_part();
}

RadicalScalar RadicalScalar::operator-() const {
  RadicalScalar r = *this;
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

RadicalScalar& RadicalScalar::operator+=(const RadicalScalar& o) {
  for (const auto& [k, q] : o.terms_) add_term(k, q);
  return *this;
}

RadicalScalar& RadicalScalar::operator-=(const RadicalScalar& o) {
  for (const auto& [k, q] : o.terms_) add_term(k, -q);
  return *this;
}

RadicalScalar& RadicalScalar::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= q;
  return *this;
}

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
  RadicalScalar out;
  for (const auto& [m, qa] : a.terms_) {
    for (const auto& [n, qb] : b.terms_) {
      // m, n squarefree: √m√n = g√((m/g)(n/g)) with g = gcd(m, n)
      BigInt g = bmp::gcd(m, n);
      BigInt key = (m / g) * (n / g);
      out.add_term(key, qa * qb * Rational(g));
    }
  }
  return out;
}

Real RadicalScalar::to_real() const {
  ensure_real_precision();
  Real s = 0;
  for (const auto& [k, q] : terms_) {
    Real t = opeforge::to_real(q);
    if (k != 1) t *= bmp::sqrt(Real(k));
    s += t;
  }
  return s;
}

std::string RadicalScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, q] : terms_) {
    BigInt num = bmp::numerator(q), den = bmp::denominator(q);
    bool neg = num < 0;
    if (neg) num = -num;
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (k == 1) {
      os << num;
    } else {
      if (num != 1) os << num << "*";
      os << "sqrt(" << k << ")";
    }
    if (den != 1) os << "/" << den;
  }
  return os.str();
}

ApproxScalar to_approx(const RadicalScalar& a, int digits) {
  ensure_real_precision();
  if (a.is_zero()) return {Real(0), Real(0)};
  Real v = a.to_real();
  Real tol = bmp::pow(Real(10), -digits);
  return {v, bmp::abs(v) * tol};
}

// ---- Scalar ---------------------------------------------------------------

namespace {
Real rounding(const Real& v) {
  return bmp::abs(v) * bmp::pow(Real(10), -working_digits());
}
}  // namespace

ApproxScalar Scalar::approx_value() const {
  if (is_exact()) return to_approx(exact(), working_digits());
  return std::get<ApproxScalar>(v_);
}

bool Scalar::is_zero() const {
  if (is_exact()) return exact().is_zero();
  const auto& a = std::get<ApproxScalar>(v_);
  return a.value == 0 && a.err == 0;
}

Rational Scalar::as_rational() const {
  if (!is_exact()) throw DomainError("approximate scalar has no exact rational value");
  return exact().as_rational();
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(-exact());
  const auto& a = std::get<ApproxScalar>(v_);
  return Scalar(ApproxScalar{-a.value, a.err});
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<RadicalScalar>(v_) += o.exact();
    return *this;
  }
  ApproxScalar a = approx_value(), b = o.approx_value();
  Real v = a.value + b.value;
  v_ = ApproxScalar{v, a.err + b.err + rounding(v)};
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    v_ = exact() * o.exact();
    return *this;
  }
  if ((is_exact() && exact().is_zero()) || (o.is_exact() && o.exact().is_zero())) {
    v_ = RadicalScalar{};
    return *this;
  }
  ApproxScalar a = approx_value(), b = o.approx_value();
  Real v = a.value * b.value;
  Real e = bmp::abs(a.value) * b.err + bmp::abs(b.value) * a.err + a.err * b.err + rounding(v);
  v_ = ApproxScalar{v, e};
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  if (a.is_exact() != b.is_exact()) return false;
  auto x = a.approx_value(), y = b.approx_value();
  return x.value == y.value && x.err == y.err;
}

Real Scalar::to_real() const {
  if (is_exact()) return exact().to_real();
  return std::get<ApproxScalar>(v_).value;
}

double Scalar::to_double() const { return to_real().convert_to<double>(); }

Real Scalar::error_bound() const {
  ensure_real_precision();
  if (is_exact()) return Real(0);
  return std::get<ApproxScalar>(v_).err;
}

std::string real_string(const Real& x, int digits) {
  if (digits <= 0) digits = working_digits();
  return x.str(digits);
}

Real parse_real(const std::string& s) {
  ensure_real_precision();
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw InputError("malformed real '" + s + "'");
  }
}

std::string Scalar::to_string() const {
  if (is_exact()) return exact().to_string();
  const auto& a = std::get<ApproxScalar>(v_);
  // Print only digits that the bound supports (at least 6, at most working digits).
  int digits = working_digits();
  if (a.err > 0 && a.value != 0) {
    Real rel = a.err / bmp::abs(a.value);
    int d = static_cast<int>(-bmp::log10(rel).convert_to<double>());
    digits = std::max(6, std::min(digits, d));
  }
  return real_string(a.value, digits);
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact() && a.exact() == b.exact()) return true;
  Real diff = bmp::abs(a.to_real() - b.to_real());
  return diff <= Real(tol) + a.error_bound() + b.error_bound();
}

nlohmann::json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, q] : s.exact().terms()) {
      if (k <= BigInt(std::numeric_limits<long long>::max()))
        terms.push_back({k.convert_to<long long>(), rational_string(q)});
      else
        terms.push_back({k.str(), rational_string(q)});
    }
    return {{"exact", {{"terms", terms}}}};
  }
  auto a = s.approx_value();
  // str(0) emits enough digits for an exact round trip at the current precision.
  return {{"approx", {{"value", a.value.str(0)}, {"err", a.err.str(0)}}}};
}

Scalar scalar_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("exact")) {
      std::vector<std::pair<BigInt, Rational>> raw;
      for (const auto& t : j.at("exact").at("terms")) {
        BigInt key = t.at(0).is_string() ? BigInt(t.at(0).get<std::string>())
                                         : BigInt(t.at(0).get<long long>());
        raw.emplace_back(key, parse_rational(t.at(1).get<std::string>()));
      }
      return Scalar(RadicalScalar::normalize(raw));
    }
    const auto& a = j.at("approx");
    return Scalar::approx(parse_real(a.at("value").get<std::string>()),
                          parse_real(a.at("err").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed scalar JSON: ") + e.what());
  }
}

}  // namespace opeforge
