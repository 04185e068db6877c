/** @file ope.cpp
 *  @brief Block recursion for the Δ_n / Λ₁ building blocks and the coefficient constructors. */
#include "opeforge/ope.hpp"

#include <fstream>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "opeforge/errors.hpp"

namespace opeforge {

namespace {

Block identity_block() { return {{JM{0, 0}, LogPoly{{0, Scalar(1L)}}}}; }

void block_add(Block& out, const Block& b, const Scalar& w = Scalar(1L)) {
  for (const auto& [jm, lp] : b) {
    LogPoly scaled;
    for (const auto& [p, c] : lp) scaled[p] = c * w;
    logpoly_add(out[jm], scaled);
  }
}

/// Distinct sub-multisets of the given cardinality.
void for_each_submultiset(const ModeMultiset& P, int size,
                          const std::function<void(const ModeMultiset&)>& fn) {
  std::vector<std::pair<SignedMode, int>> items(P.items().begin(), P.items().end());
  ModeMultiset cur;
  std::function<void(size_t, int)> rec = [&](size_t i, int left) {
    if (left == 0) {
      fn(cur);
      return;
    }
    if (i == items.size()) return;
    int rest = 0;
    for (size_t t = i + 1; t < items.size(); ++t) rest += items[t].second;
    for (int c = std::min(left, items[i].second); c >= 0; --c) {
      if (left - c > rest) break;
      if (c > 0) cur.add(items[i].first, c);
      rec(i + 1, left - c);
      if (c > 0) cur.remove(items[i].first, c);
    }
  };
  rec(0, size);
}

/// Memo tables keyed by (tag, t, m, multiset); concurrent reads, exclusive writes.
using MemoKey = std::tuple<int, int, int, ModeMultiset>;
std::shared_mutex memo_mu;
std::map<MemoKey, Block> memo;

template <class F>
Block memoized(const MemoKey& key, F&& compute) {
  {
    std::shared_lock lk(memo_mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Block b = compute();
  std::unique_lock lk(memo_mu);
  memo.emplace(key, b);
  return b;
}

enum MemoTag { kDelta0 = 0, kDeltaN = 1, kGroups = 2, kH = 3 };

// Ordered u groups with n_i ≥ 1 (sizes 4n_i+1, Σ n_i = m), coupled without contraction.
Block groups(int u, int m, const ModeMultiset& Q) {
  if (u == 0) return (m == 0 && Q.empty()) ? identity_block() : Block{};
  if (m < u || Q.cardinality() != 4 * m + u) return {};
  return memoized({kGroups, u, m, Q}, [&] {
    Block out;
    for (int n1 = 1; n1 <= m - (u - 1); ++n1) {
      for_each_submultiset(Q, 4 * n1 + 1, [&](const ModeMultiset& Q1) {
        Block rest = groups(u - 1, m - n1, multiset_difference(Q, Q1));
        if (rest.empty()) return;
        block_add(out, couple_blocks(delta_n(n1, Q1), rest));
      });
    }
    block_prune(out);
    return out;
  });
}

// Σ over ordered t-slot assignments with Σ n_i = m; slots with n_i = 0 form one Δ₀ group.
Block h_block(int t, int m, const ModeMultiset& P) {
  if (t == 0) return (m == 0 && P.empty()) ? identity_block() : Block{};
  if (P.cardinality() != 4 * m + t) return {};
  if (m == 0) return delta0(P);
  return memoized({kH, t, m, P}, [&] {
    Block out;
    for (int u = 1; u <= std::min(t, m); ++u) {
      Scalar w(binomial(t, u));
      for_each_submultiset(P, 4 * m + u, [&](const ModeMultiset& Q) {
        Block g = groups(u, m, Q);
        if (g.empty()) return;
        block_add(out, couple_blocks(g, delta0(multiset_difference(P, Q))), w);
      });
    }
    block_prune(out);
    return out;
  });
}

int int_grading(const ModeMultiset& A) {
  Rational d = d_of_multiset(A);
  if (denominator(d) != 1) throw IntegrityError("half-integer grading for Δ block " + A.to_string());
  return static_cast<int>(numerator(d).convert_to<long>());
}

RingElement assemble(const Block& b, const Scalar& f, int d) {
  RingElement out;
  for (const auto& [jm, lp] : b)
    for (const auto& [p, c] : lp) {
      if (p < 0) throw IntegrityError("negative log power in coefficient");
      TermKey k;
      k.d = d;
      k.p = p;
      k.J = jm.J;
      k.M = jm.M;
      out.add(k, c * f);
    }
  return out;
}

int metric(const MultiIndex& a, const MultiIndex& c) { return metric_g(a, c); }

void check_k(int k) {
  if (k < 1) throw InputError("power of phi must be at least 1");
}

}  // namespace

// ---- blocks -----------------------------------------------------------------

Block block_from_coupling(const CouplingResult& t, const Scalar& factor) {
  Block out;
  for (const auto& [jm, c] : t) {
    Scalar v = Scalar(c) * factor;
    if (!v.is_zero()) out[jm][0] = v;
  }
  return out;
}

Block couple_blocks(const Block& a, const Block& b) {
  Block out;
  for (const auto& [jm1, lp1] : a)
    for (const auto& [jm2, lp2] : b) {
      LogPoly prod = logpoly_mul(lp1, lp2);
      if (prod.empty()) continue;
      int M = jm1.M + jm2.M;
      for (int L = std::abs(jm1.J - jm2.J); L <= jm1.J + jm2.J; ++L) {
        if ((jm1.J + jm2.J + L) % 2 || std::abs(M) > L) continue;
        RadicalScalar w = clebsch_gordan(jm1.J, jm1.M, jm2.J, jm2.M, L, M) * parity_cg(jm1.J, jm2.J, L);
        if (w.is_zero()) continue;
        LogPoly scaled;
        for (const auto& [p, c] : prod) scaled[p] = c * Scalar(w);
        logpoly_add(out[JM{L, M}], scaled);
      }
    }
  block_prune(out);
  return out;
}

Block grade_block(const Block& b, int d) {
  Block out;
  for (const auto& [jm, lp] : b)
    for (const auto& [p, c] : lp) {
      LogPoly g = logpoly_mul(LogPoly{{p, c}}, d_factor(d, jm.J, p));
      logpoly_add(out[jm], g);
    }
  block_prune(out);
  return out;
}

void block_prune(Block& b) {
  for (auto it = b.begin(); it != b.end();) {
    logpoly_prune(it->second);
    it = it->second.empty() ? b.erase(it) : std::next(it);
  }
}

Block delta0(const ModeMultiset& A) {
  if (A.empty()) return identity_block();
  return memoized({kDelta0, 0, 0, A}, [&] {
    Scalar s(Rational(symmetry_factor(A)));
    return block_from_coupling(couple_tensor_canonical(A, true), s);
  });
}

Block delta_n(int n, const ModeMultiset& A) {
  if (n < 0) throw InputError("negative order in Δ_n");
  if (A.cardinality() != 4 * n + 1) throw InputError("Δ_n needs a multiset of cardinality 4n+1");
  if (n == 0) return delta0(A);
  return memoized({kDeltaN, n, 0, A}, [&] { return grade_block(h_block(5, n - 1, A), int_grading(A)); });
}

Block lambda1(int power, const ModeMultiset& A) {
  if (power != 2 && power != 3) throw InputError("Λ₁ is defined for φ² and φ³ only");
  if (A.cardinality() != (power == 2 ? 4 : 3))
    throw InputError("Λ₁ multiset has the wrong cardinality");
  int q = A.annihilator_count();
  Scalar s(Rational(symmetry_factor(A)));
  Rational dA = d_of_multiset(A);
  Block out;
  for (const auto& [jm, c] : couple_tensor_canonical(A, true)) {
    RemainderValue rv = power == 2 ? r1_phi2(dA, jm.J, q) : r1_phi3(dA - 1, jm.J, q);
    // (R₁)_{φ²} enters the φ² representative with the interaction weight 5
    Scalar w = Scalar(c) * s * Scalar(power == 2 ? 5L : 1L);
    LogPoly lp;
    if (!rv.const_part.is_zero()) lp[0] = rv.const_part * w;
    if (!rv.log_coeff.is_zero()) lp[1] = rv.log_coeff * w;
    logpoly_prune(lp);
    if (!lp.empty()) out[jm] = lp;
  }
  return out;
}

Scalar delta0(const ModeMultiset& A, int J) {
  Scalar out;
  for (const auto& [jm, lp] : delta0(A))
    if (jm.J == J) return lp.count(0) ? lp.at(0) : Scalar();
  return out;
}

LogPoly delta1(const ModeMultiset& A, int J) {
  for (const auto& [jm, lp] : delta_n(1, A))
    if (jm.J == J) return lp;
  return {};
}

LogPoly lambda1(int power, const ModeMultiset& A, int J) {
  for (const auto& [jm, lp] : lambda1(power, A))
    if (jm.J == J) return lp;
  return {};
}

// ---- predicates -------------------------------------------------------------

bool vanishes(int n, int k, const MultiIndex& a, const MultiIndex& c) {
  int g = metric(a, c);
  return g > 4 * n + k || (g + k) % 2 != 0;
}

int coefficient_grading(const MultiIndex& a, const MultiIndex& c, int k) {
  Rational d = c.dimension() - a.dimension() - Rational(k, 2);
  if (denominator(d) != 1) throw DomainError("half-integer grading: parity of g and k differ");
  return static_cast<int>(numerator(d).convert_to<long>());
}

// ---- constructors -----------------------------------------------------------

RingElement c0_phik(const MultiIndex& a, const MultiIndex& c, int k) {
  check_k(k);
  if (vanishes(0, k, a, c)) return {};
  int d = coefficient_grading(a, c, k);
  RingElement out;
  for (const auto& A : index_sets(a, c, k))
    out += assemble(h_block(k, 0, A), Scalar(ladder_prefactor(a, c, A)), d);
  return out;
}

RingElement c0_general(const MultiIndex& a, const MultiIndex& b, const MultiIndex& c) {
  if (b.is_vacuum()) return a == c ? RingElement::term(Scalar(1L), 0, 0, 0, 0) : RingElement{};
  for (const auto& [x, n] : b.occupations())
    if (x.l != 0)
      throw UnsupportedError("derivative left slot", "left slot " + b.pretty() + " is not a power of phi");
  return c0_phik(a, c, b.total());
}

RingElement c1_phi(const MultiIndex& a, const MultiIndex& c) { return c1_phik(a, c, 1); }

RingElement c1_phi2(const MultiIndex& a, const MultiIndex& c) { return c1_phik(a, c, 2); }

RingElement c1_phik(const MultiIndex& a, const MultiIndex& c, int k) {
  check_k(k);
  if (vanishes(1, k, a, c)) return {};
  int g = metric(a, c);
  if (k == 3 && g <= 1)
    throw UnsupportedError("(R1)phi3(q in {1,2})", "g(a,c) = 1 for phi^3");
  if (k >= 4 && g <= k - 2)
    throw UnsupportedError("(R1)phi" + std::to_string(k), "g(a,c) <= " + std::to_string(k - 2));
  int d = coefficient_grading(a, c, k);
  RingElement out;
  for (const auto& A : index_sets(a, c, k + 4))
    out += assemble(h_block(k, 1, A), Scalar(ladder_prefactor(a, c, A)), d);
  if (k >= 2) {
    Scalar w(binomial(k, 2));
    for (const auto& B : index_sets(a, c, k + 2)) {
      Block acc;
      for_each_submultiset(B, 4, [&](const ModeMultiset& P1) {
        Block l = lambda1(2, P1);
        if (!l.empty()) block_add(acc, couple_blocks(l, h_block(k - 2, 0, multiset_difference(B, P1))));
      });
      out += assemble(acc, w * Scalar(ladder_prefactor(a, c, B)), d);
    }
  }
  if (k >= 3) {
    Scalar w(binomial(k, 3));
    for (const auto& C : index_sets(a, c, k)) {
      Block acc;
      for_each_submultiset(C, 3, [&](const ModeMultiset& P1) {
        Block l = lambda1(3, P1);
        if (!l.empty()) block_add(acc, couple_blocks(l, h_block(k - 3, 0, multiset_difference(C, P1))));
      });
      out += assemble(acc, w * Scalar(ladder_prefactor(a, c, C)), d);
    }
  }
  return out;
}

RingElement c2_phi(const MultiIndex& a, const MultiIndex& c) {
  if (vanishes(2, 1, a, c)) return {};
  if (metric(a, c) <= 3)
    throw UnsupportedError("(R1)phi5", "C2 for phi needs g(a,c) > 3");
  return inverse_laplacian(c1_phik(a, c, 5));
}

RingElement cn_max(const MultiIndex& a, const MultiIndex& c, int n, int k) {
  check_k(k);
  if (n < 0) throw InputError("negative order");
  if (metric(a, c) != 4 * n + k) throw InputError("cn_max needs g(a,c) = 4n+k");
  int d = coefficient_grading(a, c, k);
  RingElement out;
  for (const auto& A : index_sets(a, c, 4 * n + k))
    out += assemble(h_block(k, n, A), Scalar(ladder_prefactor(a, c, A)), d);
  return out;
}

// ---- structural checks ------------------------------------------------------

StructuralReport structural_checks(const RingElement& value, const CoefficientQuery& q) {
  StructuralReport rep;
  int d = 0;
  bool have_d = true;
  try {
    d = coefficient_grading(q.a, q.c, q.k);
  } catch (const DomainError&) {
    have_d = false;
  }
  for (const auto& [key, s] : value.terms()) {
    if (key.p > q.n) {
      rep.log_ok = false;
      rep.violations.push_back("log power " + std::to_string(key.p) + " exceeds order " + std::to_string(q.n));
    }
    if (!have_d || key.d != d) {
      rep.grading_ok = false;
      rep.violations.push_back("r-power " + std::to_string(key.d) + " differs from grading " +
                               (have_d ? std::to_string(d) : std::string("(half-integer)")));
    }
  }
  return rep;
}

// ---- queries and cache ------------------------------------------------------

std::string CoefficientQuery::to_string() const {
  return "C" + std::to_string(n) + "^{" + c.pretty() + "}_{phi^" + std::to_string(k) + ", " + a.pretty() + "}";
}

nlohmann::json CoefficientQuery::to_json() const {
  return {{"n", n}, {"k", k}, {"a", a.to_json()}, {"c", c.to_json()}};
}

CoefficientQuery CoefficientQuery::from_json(const nlohmann::json& j) {
  try {
    CoefficientQuery q;
    q.n = j.at("n").get<int>();
    q.k = j.at("k").get<int>();
    q.a = MultiIndex::from_json(j.at("a"));
    q.c = MultiIndex::from_json(j.at("c"));
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed coefficient query: ") + e.what());
  }
}

std::string status_name(CoefficientStatus s) {
  switch (s) {
    case CoefficientStatus::Exact: return "exact";
    case CoefficientStatus::Approx: return "approx";
    case CoefficientStatus::Unsupported: return "unsupported";
    case CoefficientStatus::Zero: return "zero";
  }
  return "zero";
}

namespace {

CoefficientStatus status_from_name(const std::string& s) {
  if (s == "exact") return CoefficientStatus::Exact;
  if (s == "approx") return CoefficientStatus::Approx;
  if (s == "unsupported") return CoefficientStatus::Unsupported;
  if (s == "zero") return CoefficientStatus::Zero;
  throw InputError("unknown coefficient status " + s);
}

std::string cache_key(const CoefficientQuery& q) {
  return std::to_string(q.n) + "|" + std::to_string(q.k) + "|" + q.a.to_string() + "|" + q.c.to_string();
}

std::shared_mutex cache_mu;
std::map<std::string, OpeCoefficient> coeff_cache;

OpeCoefficient compute_uncached(const CoefficientQuery& q) {
  if (q.n < 0) throw InputError("order n must be nonnegative");
  check_k(q.k);
  OpeCoefficient out;
  out.query = q;
  if (vanishes(q.n, q.k, q.a, q.c)) {
    out.method = "vanishing rule";
    return out;
  }
  int g = metric(q.a, q.c);
  try {
    if (q.n == 0) {
      out.value = c0_phik(q.a, q.c, q.k);
      out.method = "C0 phi^k";
    } else if (q.n == 1) {
      out.value = c1_phik(q.a, q.c, q.k);
      out.method = q.k == 1 ? "C1 phi" : "C1 phi^" + std::to_string(q.k);
    } else if (q.n == 2 && q.k == 1) {
      out.value = c2_phi(q.a, q.c);
      out.method = "C2 phi = inverse Laplacian of C1 phi^5";
    } else if (g == 4 * q.n + q.k) {
      out.value = cn_max(q.a, q.c, q.n, q.k);
      out.method = "maximal class";
    } else {
      throw UnsupportedError("(R" + std::to_string(q.n - 1) + ")phi^m remainders",
                             "order " + std::to_string(q.n) + " below the maximal class");
    }
  } catch (const UnsupportedError& e) {
    out.status = CoefficientStatus::Unsupported;
    out.missing_operator = e.missing_operator();
    out.method = e.what();
    out.value = {};
    return out;
  }
  if (out.value.is_zero())
    out.status = CoefficientStatus::Zero;
  else
    out.status = out.value.is_exact() ? CoefficientStatus::Exact : CoefficientStatus::Approx;
  return out;
}

}  // namespace

nlohmann::json OpeCoefficient::to_json() const {
  nlohmann::json j{{"query", query.to_json()}, {"value", value.to_json()}, {"status", status_name(status)}};
  if (!method.empty()) j["method"] = method;
  if (!missing_operator.empty()) j["missing_operator"] = missing_operator;
  return j;
}

OpeCoefficient OpeCoefficient::from_json(const nlohmann::json& j) {
  try {
    OpeCoefficient c;
    c.query = CoefficientQuery::from_json(j.at("query"));
    c.value = RingElement::from_json(j.at("value"));
    c.status = status_from_name(j.at("status").get<std::string>());
    c.method = j.value("method", "");
    c.missing_operator = j.value("missing_operator", "");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed coefficient record: ") + e.what());
  }
}

OpeCoefficient compute_coefficient(const CoefficientQuery& q) {
  std::string key = cache_key(q);
  {
    std::shared_lock lk(cache_mu);
    auto it = coeff_cache.find(key);
    if (it != coeff_cache.end()) return it->second;
  }
  OpeCoefficient c = compute_uncached(q);
  std::unique_lock lk(cache_mu);
  coeff_cache.emplace(key, c);
  return c;
}

void clear_coefficient_cache() {
  {
    std::unique_lock lk(cache_mu);
    coeff_cache.clear();
  }
  std::unique_lock lk(memo_mu);
  memo.clear();
}

size_t coefficient_cache_size() {
  std::shared_lock lk(cache_mu);
  return coeff_cache.size();
}

const std::string& engine_version() {
  static const std::string v = "opeforge-engine-1";
  return v;
}

void save_coefficient_cache(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IOError("cannot write cache file " + path);
  std::shared_lock lk(cache_mu);
  os << nlohmann::json{{"engine_version", engine_version()}}.dump() << '\n';
  for (const auto& [k, c] : coeff_cache) os << c.to_json().dump() << '\n';
  if (!os) throw IOError("write failed for " + path);
}

size_t load_coefficient_cache(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IOError("cannot read cache file " + path);
  std::string line;
  size_t n = 0;
  std::unique_lock lk(cache_mu);
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IOError("corrupt cache line: " + std::string(e.what()));
    }
    if (header) {
      header = false;
      // Entries written by another engine version are stale.
      if (!j.is_object() || j.value("engine_version", "") != engine_version()) return 0;
      continue;
    }
    OpeCoefficient c = OpeCoefficient::from_json(j);
    coeff_cache[cache_key(c.query)] = c;
    ++n;
  }
  return n;
}

const std::vector<KnownRemainderFact>& known_remainder_facts() {
  static const std::vector<KnownRemainderFact> facts{
      {"(R1)phi4", "[out=phi^3]_{in=phi}", "0"},
      {"(R1)phi4", "[out=phi^2*d1phi_m]_{in=phi}", "-160*S^{1m}*(log r + c), c undetermined"},
  };
  return facts;
}

}  // namespace opeforge
