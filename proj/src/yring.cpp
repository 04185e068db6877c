/** @file yring.cpp
 *  @brief Laplacian, explicit right inverse and ladder bookkeeping on the function ring. */
#include "opeforge/yring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opeforge/angular.hpp"
#include "opeforge/errors.hpp"

namespace opeforge {

// ---- NormalMonomial -------------------------------------------------------

NormalMonomial::NormalMonomial(std::vector<AngularLabel> c, std::vector<AngularLabel> a)
    : creations(std::move(c)), annihilations(std::move(a)) {
  std::sort(creations.begin(), creations.end());
  std::sort(annihilations.begin(), annihilations.end());
}

ModeMultiset NormalMonomial::as_multiset() const {
  ModeMultiset A;
  for (const auto& x : creations) A.add({Sign::Plus, x});
  for (const auto& x : annihilations) A.add({Sign::Minus, x});
  return A;
}

std::string NormalMonomial::to_string() const {
  if (is_identity()) return "id";
  std::ostringstream os;
  for (const auto& x : creations) os << "b+" << x.to_string();
  for (const auto& x : annihilations) os << "b" << x.to_string();
  return os.str();
}

std::vector<std::pair<NormalMonomial, BigInt>> normal_order_product(const NormalMonomial& a,
                                                                     const NormalMonomial& b) {
  // Only a.annihilations · b.creations need reordering; contract per label.
  std::map<AngularLabel, int> alpha, beta;
  for (const auto& x : a.annihilations) ++alpha[x];
  for (const auto& x : b.creations) ++beta[x];
  std::vector<AngularLabel> shared;
  for (const auto& [x, c] : alpha)
    if (beta.count(x)) shared.push_back(x);

  std::vector<std::pair<NormalMonomial, BigInt>> out;
  std::vector<int> k(shared.size(), 0);
  while (true) {
    BigInt mult = 1;
    std::map<AngularLabel, int> drop;
    for (size_t i = 0; i < shared.size(); ++i) {
      int al = alpha[shared[i]], be = beta[shared[i]];
      Rational w = binomial(al, k[i]) * binomial(be, k[i]) * factorial(k[i]);
      mult *= bmp::numerator(w);
      drop[shared[i]] = k[i];
    }
    std::vector<AngularLabel> cre = a.creations, ann;
    auto drop_c = drop;
    for (const auto& x : b.creations) {
      auto it = drop_c.find(x);
      if (it != drop_c.end() && it->second > 0) {
        --it->second;
        continue;
      }
      cre.push_back(x);
    }
    auto drop_a = drop;
    for (const auto& x : a.annihilations) {
      auto it = drop_a.find(x);
      if (it != drop_a.end() && it->second > 0) {
        --it->second;
        continue;
      }
      ann.push_back(x);
    }
    ann.insert(ann.end(), b.annihilations.begin(), b.annihilations.end());
    out.emplace_back(NormalMonomial(cre, ann), mult);
    // next contraction pattern
    size_t i = 0;
    for (; i < shared.size(); ++i) {
      int lim = std::min(alpha[shared[i]], beta[shared[i]]);
      if (k[i] < lim) {
        ++k[i];
        break;
      }
      k[i] = 0;
    }
    if (i == shared.size()) break;
  }
  return out;
}

// ---- LogPoly --------------------------------------------------------------

void logpoly_prune(LogPoly& a) {
  for (auto it = a.begin(); it != a.end();) {
    if (it->second.is_zero())
      it = a.erase(it);
    else
      ++it;
  }
}

LogPoly logpoly_mul(const LogPoly& a, const LogPoly& b) {
  LogPoly out;
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) out[pa + pb] += ca * cb;
  logpoly_prune(out);
  return out;
}

void logpoly_add(LogPoly& a, const LogPoly& b) {
  for (const auto& [p, c] : b) a[p] += c;
  logpoly_prune(a);
}

// ---- RingElement ----------------------------------------------------------

RingElement RingElement::term(const Scalar& s, int d, int p, int J, int M) {
  RingElement e;
  TermKey k;
  k.d = d;
  k.p = p;
  k.J = J;
  k.M = M;
  e.add(k, s);
  return e;
}

void RingElement::add(const TermKey& k, const Scalar& s) {
  if (s.is_zero()) return;
  if (k.J < 0 || std::abs(k.M) > k.J) throw InputError("invalid harmonic index in ring term");
  if (k.p < 0 || k.pmu < 0) throw InputError("negative log power in ring term");
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, s);
    return;
  }
  it->second += s;
  if (it->second.is_zero()) terms_.erase(it);
}

bool RingElement::is_exact() const {
  for (const auto& kv : terms_)
    if (!kv.second.is_exact()) return false;
  return true;
}

bool RingElement::has_ladder() const {
  for (const auto& kv : terms_)
    if (kv.first.ladder) return true;
  return false;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  for (const auto& [k, s] : o.terms_) add(k, s);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  for (const auto& [k, s] : o.terms_) add(k, -s);
  return *this;
}

RingElement RingElement::operator-() const {
  RingElement r;
  for (const auto& [k, s] : terms_) r.terms_.emplace(k, -s);
  return r;
}

RingElement& RingElement::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

bool RingElement::operator==(const RingElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (!(a->first == b->first) || !(a->second == b->second)) return false;
  return true;
}

int RingElement::max_log_power() const {
  int m = -1;
  for (const auto& kv : terms_) m = std::max(m, kv.first.p);
  return m;
}

namespace {

std::string factor_string(const TermKey& k) {
  std::vector<std::string> f;
  if (k.d == 1)
    f.push_back("r");
  else if (k.d != 0)
    f.push_back("r^" + std::to_string(k.d));
  if (k.p == 1)
    f.push_back("log(r)");
  else if (k.p > 1)
    f.push_back("log(r)^" + std::to_string(k.p));
  if (k.pmu == 1)
    f.push_back("log(mu)");
  else if (k.pmu > 1)
    f.push_back("log(mu)^" + std::to_string(k.pmu));
  if (k.J > 0) f.push_back("S_{" + std::to_string(k.J) + "," + std::to_string(k.M) + "}");
  if (k.ladder) f.push_back("[" + k.ladder->to_string() + "]");
  std::string s;
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "*" : "") + f[i];
  return s;
}

// Renders coefficient × factors, e.g. "r^2/6", "-5*r/2", "sqrt(2)*S_{1,0}".
std::string term_string(const Scalar& c, const std::string& fac, bool& negative) {
  negative = false;
  if (c.is_rational()) {
    Rational q = c.as_rational();
    if (q < 0) {
      negative = true;
      q = -q;
    }
    BigInt n = bmp::numerator(q), d = bmp::denominator(q);
    std::string s;
    if (fac.empty())
      s = n.str();
    else if (n == 1)
      s = fac;
    else
      s = n.str() + "*" + fac;
    if (d != 1) s += "/" + d.str();
    return s;
  }
  std::string cs = c.to_string();
  if (fac.empty()) return cs;
  return "(" + cs + ")*" + fac;
}

}  // namespace

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  // Order: descending log power, then descending r power, then J, M.
  std::vector<const Map::value_type*> items;
  for (const auto& kv : terms_) items.push_back(&kv);
  std::stable_sort(items.begin(), items.end(), [](auto* a, auto* b) {
    if (a->first.p != b->first.p) return a->first.p > b->first.p;
    if (a->first.d != b->first.d) return a->first.d > b->first.d;
    return a->first < b->first;
  });
  std::string out;
  bool first = true;
  for (auto* kv : items) {
    bool neg = false;
    std::string t = term_string(kv->second, factor_string(kv->first), neg);
    if (first)
      out += neg ? "-" + t : t;
    else
      out += (neg ? " - " : " + ") + t;
    first = false;
  }
  return out;
}

nlohmann::json RingElement::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, s] : terms_) {
    nlohmann::json t = {{"scalar", scalar_to_json(s)}, {"d", k.d}, {"p", k.p}, {"J", k.J}, {"M", k.M}};
    if (k.pmu) t["pmu"] = k.pmu;
    if (k.ladder) {
      nlohmann::json cr = nlohmann::json::array(), an = nlohmann::json::array();
      for (const auto& x : k.ladder->creations) cr.push_back({x.l, x.m});
      for (const auto& x : k.ladder->annihilations) an.push_back({x.l, x.m});
      t["ladder"] = {{"create", cr}, {"annihilate", an}};
    }
    terms.push_back(t);
  }
  return {{"terms", terms}};
}

RingElement RingElement::from_json(const nlohmann::json& j) {
  RingElement e;
  try {
    for (const auto& t : j.at("terms")) {
      TermKey k;
      k.d = t.at("d").get<int>();
      k.p = t.at("p").get<int>();
      k.J = t.at("J").get<int>();
      k.M = t.at("M").get<int>();
      if (t.contains("pmu")) k.pmu = t.at("pmu").get<int>();
      if (t.contains("ladder")) {
        std::vector<AngularLabel> cr, an;
        for (const auto& x : t.at("ladder").at("create")) cr.push_back({x.at(0).get<int>(), x.at(1).get<int>()});
        for (const auto& x : t.at("ladder").at("annihilate")) an.push_back({x.at(0).get<int>(), x.at(1).get<int>()});
        k.ladder = NormalMonomial(cr, an);
      }
      e.add(k, scalar_from_json(t.at("scalar")));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed ring element JSON: ") + ex.what());
  }
  return e;
}

std::complex<double> RingElement::evaluate(double r, double theta, double phi, double lambda) const {
  int L = 0;
  for (const auto& kv : terms_) L = std::max(L, kv.first.J);
  auto Y = harmonics_table(L, theta, phi);
  std::complex<double> s = 0;
  double lr = std::log(r);
  for (const auto& [k, c] : terms_) {
    if (k.ladder) throw DomainError("cannot evaluate a ring element with ladder words");
    double v = c.to_double() * std::pow(r, k.d) * std::pow(lr, k.p) * std::pow(lambda, k.pmu);
    s += v * Y[k.J * (k.J + 1) + k.M];
  }
  return s;
}

// ---- Laplacian ------------------------------------------------------------

long laplace_eigen(int d, int J, int D) { return static_cast<long>(d - J) * (d + D - 2 + J); }

RingElement laplacian(const RingElement& e, int D) {
  RingElement out;
  for (const auto& [k, s] : e.terms()) {
    long ev = laplace_eigen(k.d, k.J, D);
    long c = 2L * k.d + D - 2;
    TermKey t = k;
    t.d = k.d - 2;
    out.add(t, s * Scalar(Rational(ev)));
    if (k.p >= 1) {
      t.p = k.p - 1;
      out.add(t, s * Scalar(Rational(static_cast<long>(k.p) * c)));
    }
    if (k.p >= 2) {
      t.p = k.p - 2;
      out.add(t, s * Scalar(Rational(static_cast<long>(k.p) * (k.p - 1))));
    }
  }
  return out;
}

LogPoly d_factor(int d, int J, int p, int D) {
  if (p < 0) throw InputError("negative log power");
  if (J < 0) throw InputError("negative harmonic degree");
  LogPoly out;
  long a = d - J, b = d + D - 2 + J;
  Rational pf = factorial(static_cast<unsigned>(p));
  if (a * b == 0) {
    // resonant branch: Σ_i (−1)^i p!/(p+1−i)! L^{1−i}/c^{i+1}
    Rational c = Rational(2L * d + D - 2);
    for (int i = 0; i <= p; ++i) {
      Rational v = pf / factorial(static_cast<unsigned>(p + 1 - i));
      Rational ci = 1;
      for (int t = 0; t <= i; ++t) ci *= c;
      v /= ci;
      if (i % 2) v = -v;
      out[1 - i] += Scalar(v);
    }
  } else {
    // Σ_i Σ_{n≤i} (−1)^i p!/(p−i)! L^{−i} / (a^{n+1} b^{i−n+1})
    for (int i = 0; i <= p; ++i) {
      Rational pre = pf / factorial(static_cast<unsigned>(p - i));
      if (i % 2) pre = -pre;
      Rational inner = 0;
      for (int n = 0; n <= i; ++n) {
        Rational den = 1;
        for (int t = 0; t < n + 1; ++t) den *= a;
        for (int t = 0; t < i - n + 1; ++t) den *= b;
        inner += Rational(1) / den;
      }
      out[-i] += Scalar(pre * inner);
    }
  }
  logpoly_prune(out);
  return out;
}

namespace {

// □⁻¹ of r^{d} (log r)^p S_J as LogPoly in nonnegative powers, r-power d+2.
LogPoly invert_power(int d, int J, int p, int D) {
  LogPoly lp{{p, Scalar(1L)}};
  LogPoly r = logpoly_mul(lp, d_factor(d + 2, J, p, D));
  for (const auto& kv : r)
    if (kv.first < 0) throw IntegrityError("negative log power after inverse Laplacian");
  return r;
}

}  // namespace

RingElement inverse_laplacian(const RingElement& e, int D, bool symbolic_mu) {
  RingElement out;
  for (const auto& [k, s] : e.terms()) {
    if (!symbolic_mu) {
      for (const auto& [q, c] : invert_power(k.d, k.J, k.p, D)) {
        TermKey t = k;
        t.d = k.d + 2;
        t.p = q;
        out.add(t, s * c);
      }
      continue;
    }
    // L = L' − λ with L' = log(μ r); invert in L', then expand back.
    for (int i = 0; i <= k.p; ++i) {
      Rational w = binomial(k.p, i);
      if ((k.p - i) % 2) w = -w;
      for (const auto& [kk, c] : invert_power(k.d, k.J, i, D)) {
        for (int j = 0; j <= kk; ++j) {
          TermKey t = k;
          t.d = k.d + 2;
          t.p = j;
          t.pmu = k.pmu + (k.p - i) + (kk - j);
          out.add(t, s * c * Scalar(w * binomial(kk, j)));
        }
      }
    }
  }
  return out;
}

RingElement matrix_element(const RingElement& e, const MultiIndex& a, const MultiIndex& b) {
  RingElement out;
  for (const auto& [k, s] : e.terms()) {
    TermKey t = k;
    t.ladder.reset();
    if (!k.ladder) {
      if (a == b) out.add(t, s);
      continue;
    }
    Rational f = ladder_prefactor(a, b, k.ladder->as_multiset());
    if (f != 0) out.add(t, s * Scalar(f));
  }
  return out;
}

}  // namespace opeforge
