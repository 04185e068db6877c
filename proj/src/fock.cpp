/** @file fock.cpp
 *  @brief Multi-indices, ladder action, index sets and partitions. */
#include "opeforge/fock.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "opeforge/errors.hpp"

namespace opeforge {

// ---- MultiIndex -----------------------------------------------------------

MultiIndex MultiIndex::phi_power(int p) {
  if (p < 0) throw InputError("negative power of phi");
  MultiIndex a;
  a.add({0, 0}, p);
  return a;
}

int MultiIndex::count(const AngularLabel& x) const {
  auto it = occ_.find(x);
  return it == occ_.end() ? 0 : it->second;
}

void MultiIndex::add(const AngularLabel& x, int n) {
  if (!x.valid()) throw InputError("invalid angular label " + x.to_string());
  int v = count(x) + n;
  if (v < 0) throw InputError("negative occupation for " + x.to_string());
  if (v == 0)
    occ_.erase(x);
  else
    occ_[x] = v;
}

int MultiIndex::total() const {
  int n = 0;
  for (const auto& kv : occ_) n += kv.second;
  return n;
}

Rational MultiIndex::dimension() const {
  Rational d = 0;
  for (const auto& [x, c] : occ_) d += Rational(c * (2 * x.l + 1), 2);
  return d;
}

namespace {
std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}
}  // namespace

MultiIndex MultiIndex::parse(const std::string& text) {
  static const std::regex re_phi(R"(phi(\^(\d+))?)");
  static const std::regex re_phi_braced(R"(phi\^\{(\d+)\})");
  static const std::regex re_entry(R"((\d+)\s*,\s*(-?\d+)\s*:\s*(\d+))");
  static const std::regex re_deriv(R"(d(\d+)phi_(-?\d+)(\^(\d+))?)");
  MultiIndex out;
  std::string t = trim(text);
  if (t.empty()) throw InputError("empty multi-index");
  std::string part;
  std::vector<std::string> parts;
  for (char ch : t) {
    if (ch == ';' || ch == '*') {
      parts.push_back(trim(part));
      part.clear();
    } else {
      part += ch;
    }
  }
  parts.push_back(trim(part));
  for (const auto& p : parts) {
    std::smatch m;
    if (p == "1") continue;
    if (std::regex_match(p, m, re_phi)) {
      out.add({0, 0}, m[2].matched ? std::stoi(m[2]) : 1);
    } else if (std::regex_match(p, m, re_phi_braced)) {
      out.add({0, 0}, std::stoi(m[1]));
    } else if (std::regex_match(p, m, re_entry)) {
      AngularLabel x{std::stoi(m[1]), std::stoi(m[2])};
      if (!x.valid()) throw InputError("invalid label in '" + p + "'");
      out.add(x, std::stoi(m[3]));
    } else if (std::regex_match(p, m, re_deriv)) {
      AngularLabel x{std::stoi(m[1]), std::stoi(m[2])};
      if (!x.valid()) throw InputError("invalid label in '" + p + "'");
      out.add(x, m[4].matched ? std::stoi(m[4]) : 1);
    } else {
      throw InputError("cannot parse multi-index factor '" + p + "'");
    }
  }
  return out;
}

std::string MultiIndex::to_string() const {
  if (occ_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, c] : occ_) {
    if (!first) os << ";";
    first = false;
    os << x.l << "," << x.m << ":" << c;
  }
  return os.str();
}

std::string MultiIndex::pretty() const {
  if (occ_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, c] : occ_) {
    if (!first) os << "*";
    first = false;
    if (x.l == 0)
      os << "phi";
    else
      os << "d" << x.l << "phi_" << x.m;
    if (c > 1) os << "^" << c;
  }
  return os.str();
}

nlohmann::json MultiIndex::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [x, c] : occ_) j.push_back({x.l, x.m, c});
  return j;
}

MultiIndex MultiIndex::from_json(const nlohmann::json& j) {
  MultiIndex a;
  try {
    for (const auto& e : j) a.add({e.at(0).get<int>(), e.at(1).get<int>()}, e.at(2).get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed multi-index JSON: ") + e.what());
  }
  return a;
}

int metric_g(const MultiIndex& a, const MultiIndex& b) {
  int g = 0;
  for (const auto& [x, c] : a.occupations()) g += std::abs(c - b.count(x));
  for (const auto& [x, c] : b.occupations())
    if (a.count(x) == 0) g += c;
  return g;
}

// ---- multisets ------------------------------------------------------------

ModeMultiset multiset_sum(const ModeMultiset& a, const ModeMultiset& b) {
  ModeMultiset r = a;
  for (const auto& [x, c] : b.items()) r.add(x, c);
  return r;
}

ModeMultiset multiset_union(const ModeMultiset& a, const ModeMultiset& b) {
  ModeMultiset r = a;
  for (const auto& [x, c] : b.items()) {
    int have = a.count(x);
    if (c > have) r.add(x, c - have);
  }
  return r;
}

ModeMultiset multiset_intersection(const ModeMultiset& a, const ModeMultiset& b) {
  ModeMultiset r;
  for (const auto& [x, c] : a.items()) {
    int v = std::min(c, b.count(x));
    if (v > 0) r.add(x, v);
  }
  return r;
}

bool multiset_includes(const ModeMultiset& outer, const ModeMultiset& inner) {
  for (const auto& [x, c] : inner.items())
    if (outer.count(x) < c) return false;
  return true;
}

ModeMultiset multiset_difference(const ModeMultiset& outer, const ModeMultiset& inner) {
  ModeMultiset r = outer;
  for (const auto& [x, c] : inner.items()) r.remove(x, c);
  return r;
}

// ---- ladder ---------------------------------------------------------------

LadderResult ladder_apply(const SignedMode& mode, const MultiIndex& a) {
  MultiIndex r = a;
  if (mode.creation()) {
    r.add(mode.mode, 1);
    return {Rational(1), r};
  }
  int c = a.count(mode.mode);
  if (c == 0) return {Rational(0), std::nullopt};
  r.add(mode.mode, -1);
  return {Rational(c), r};
}

BigInt symmetry_factor(const ModeMultiset& A) {
  Rational r = factorial(static_cast<unsigned>(A.cardinality()));
  for (const auto& kv : A.items()) r /= factorial(static_cast<unsigned>(kv.second));
  return bmp::numerator(r);
}

Rational ladder_prefactor(const MultiIndex& a, const MultiIndex& b, const ModeMultiset& A) {
  MultiIndex cur = a;
  Rational f = 1;
  for (const auto& [x, c] : A.items()) {
    if (x.creation()) continue;
    int have = cur.count(x.mode);
    if (have < c) return 0;
    for (int i = 0; i < c; ++i) f *= (have - i);
    cur.add(x.mode, -c);
  }
  for (const auto& [x, c] : A.items())
    if (x.creation()) cur.add(x.mode, c);
  return cur == b ? f : Rational(0);
}

std::vector<ModeMultiset> index_sets(const MultiIndex& a, const MultiIndex& b, int n) {
  if (n < 0) throw InputError("negative index-set cardinality");
  std::vector<ModeMultiset> out;
  int g = metric_g(a, b);
  if (g > n || (n - g) % 2) return out;
  ModeMultiset base;
  std::set<AngularLabel> labels;
  for (const auto& kv : a.occupations()) labels.insert(kv.first);
  for (const auto& kv : b.occupations()) labels.insert(kv.first);
  for (const auto& x : labels) {
    int d = b.count(x) - a.count(x);
    if (d > 0) base.add({Sign::Plus, x}, d);
    if (d < 0) base.add({Sign::Minus, x}, -d);
  }
  int k = (n - g) / 2;
  std::vector<AngularLabel> support;
  for (const auto& kv : a.occupations()) support.push_back(kv.first);
  // distribute k pairs (+x,-x) over the support, respecting capacity a_x
  std::vector<int> pairs(support.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t i, int left) {
    if (i == support.size()) {
      if (left != 0) return;
      ModeMultiset A = base;
      for (size_t t = 0; t < support.size(); ++t) {
        if (pairs[t] == 0) continue;
        A.add({Sign::Plus, support[t]}, pairs[t]);
        A.add({Sign::Minus, support[t]}, pairs[t]);
      }
      if (ladder_prefactor(a, b, A) != 0) out.push_back(std::move(A));
      return;
    }
    const AngularLabel& x = support[i];
    int used = std::max(0, a.count(x) - b.count(x));
    int cap = a.count(x) - used;
    for (int p = 0; p <= std::min(cap, left); ++p) {
      pairs[i] = p;
      rec(i + 1, left - p);
    }
    pairs[i] = 0;
  };
  rec(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<ModeMultiset>> partitions(const ModeMultiset& A, const std::vector<int>& sizes) {
  int total = 0;
  for (int s : sizes) {
    if (s < 0) throw InputError("negative partition size");
    total += s;
  }
  if (total != A.cardinality()) throw InputError("partition sizes do not sum to the cardinality");
  std::vector<std::vector<ModeMultiset>> out;
  std::vector<ModeMultiset> current;
  std::function<void(const ModeMultiset&, size_t)> rec = [&](const ModeMultiset& rest, size_t idx) {
    if (idx + 1 == sizes.size() || sizes.empty()) {
      if (!sizes.empty()) current.push_back(rest);
      out.push_back(current);
      if (!sizes.empty()) current.pop_back();
      return;
    }
    std::vector<std::pair<SignedMode, int>> items(rest.items().begin(), rest.items().end());
    ModeMultiset part;
    std::function<void(size_t, int)> pick = [&](size_t i, int need) {
      if (need == 0) {
        current.push_back(part);
        rec(multiset_difference(rest, part), idx + 1);
        current.pop_back();
        return;
      }
      if (i == items.size()) return;
      int remaining = 0;
      for (size_t t = i; t < items.size(); ++t) remaining += items[t].second;
      if (remaining < need) return;
      for (int c = std::min(need, items[i].second); c >= 0; --c) {
        if (c > 0) part.add(items[i].first, c);
        pick(i + 1, need - c);
        if (c > 0) part.remove(items[i].first, c);
      }
    };
    pick(0, sizes[idx]);
  };
  rec(A, 0);
  return out;
}

Rational d_of_multiset(const ModeMultiset& A) {
  Rational d(-1, 2);
  for (const auto& [x, c] : A.items()) {
    Rational w = Rational(c * (2 * x.mode.l + 1), 2);
    d += x.creation() ? w : -w;
  }
  return d;
}

}  // namespace opeforge
