/** @file reftable.cpp
 *  @brief Reference-table expression language, loader and checker. */
#include "opeforge/reftable.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

#include "opeforge/errors.hpp"

namespace opeforge {

namespace {

bool is_constant(const LogPoly& v) {
  for (const auto& [p, c] : v)
    if (p != 0 && !c.is_zero()) return false;
  return true;
}

Rational constant_of(const LogPoly& v) {
  if (!is_constant(v)) throw InputError("expected an L-free value in table expression");
  auto it = v.find(0);
  return it == v.end() ? Rational(0) : it->second.as_rational();
}

long integer_of(const LogPoly& v) {
  Rational q = constant_of(v);
  if (denominator(q) != 1) throw InputError("expected an integer in table expression");
  return numerator(q).convert_to<long>();
}

LogPoly constant(const Rational& q) {
  LogPoly v;
  if (q != 0) v[0] = Scalar(q);
  return v;
}

LogPoly scale(const LogPoly& v, const Rational& q) {
  LogPoly out;
  for (const auto& [p, c] : v) out[p] = c * Scalar(q);
  logpoly_prune(out);
  return out;
}

class ExprParser {
 public:
  ExprParser(const std::string& s, const Bindings& vars) : s_(s), vars_(vars) {}

  LogPoly parse() {
    LogPoly v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("table expression '" + s_ + "': " + why + " at position " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  LogPoly expr() {
    LogPoly v;
    if (eat('-'))
      v = scale(term(), -1);
    else
      v = term();
    for (;;) {
      if (eat('+'))
        logpoly_add(v, term());
      else if (eat('-'))
        logpoly_add(v, scale(term(), -1));
      else
        return v;
    }
  }

  LogPoly term() {
    LogPoly v = power();
    for (;;) {
      if (eat('*')) {
        v = logpoly_mul(v, power());
      } else if (eat('/')) {
        Rational d = constant_of(power());
        if (d == 0) fail("division by zero");
        v = scale(v, Rational(1) / d);
      } else {
        return v;
      }
    }
  }

  LogPoly power() {
    LogPoly v = postfix();
    if (eat('^')) {
      bool neg = eat('-');
      long e = integer_of(postfix());
      if (neg) {
        Rational b = constant_of(v);
        if (b == 0) fail("zero to a negative power");
        Rational r = 1;
        for (long t = 0; t < e; ++t) r /= b;
        return constant(r);
      }
      LogPoly r = constant(1);
      for (long t = 0; t < e; ++t) r = logpoly_mul(r, v);
      return r;
    }
    return v;
  }

  LogPoly postfix() {
    LogPoly v = primary();
    while (eat('!')) {
      long n = integer_of(v);
      if (n < 0) fail("factorial of a negative integer");
      v = constant(factorial(static_cast<unsigned>(n)));
    }
    return v;
  }

  std::vector<LogPoly> args() {
    std::vector<LogPoly> out;
    if (!eat('(')) fail("expected '('");
    out.push_back(expr());
    while (eat(',')) out.push_back(expr());
    if (!eat(')')) fail("expected ')'");
    return out;
  }

  LogPoly primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      LogPoly v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      Rational q(BigInt(s_.substr(i_, j - i_)));
      i_ = j;
      return constant(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j]))) ++j;
      std::string name = s_.substr(i_, j - i_);
      i_ = j;
      if (name == "L") return LogPoly{{1, Scalar(1L)}};
      if (name == "D") {
        auto a = args();
        if (a.size() != 2) fail("D takes two arguments");
        long d = integer_of(a[0]), J = integer_of(a[1]);
        return d_factor(static_cast<int>(d), static_cast<int>(J), 0);
      }
      if (name == "cgd") {
        auto a = args();
        if (a.size() != 3) fail("cgd takes three arguments");
        long l = integer_of(a[0]), u = integer_of(a[1]), sh = integer_of(a[2]);
        LogPoly sum;
        for (long lp = 0; lp <= u; ++lp)
          for (long J = std::abs(l - lp); J <= l + lp; ++J) {
            if ((l + lp + J) % 2) continue;
            Rational w = parity_cg_squared(static_cast<int>(l), static_cast<int>(lp), static_cast<int>(J));
            logpoly_add(sum, scale(d_factor(static_cast<int>(l - lp + sh), static_cast<int>(J), 0), w));
          }
        return sum;
      }
      if (name == "rphi2") {
        // (R1)_{φ²}(d, j, q=1) as c0 + c1·L
        auto a = args();
        if (a.size() != 2) fail("rphi2 takes two arguments");
        RemainderValue rv = r1_phi2(Rational(integer_of(a[0])), static_cast<int>(integer_of(a[1])), 1);
        LogPoly out;
        if (!rv.const_part.is_zero()) out[0] = rv.const_part;
        if (!rv.log_coeff.is_zero()) out[1] = rv.log_coeff;
        return out;
      }
      auto it = vars_.find(name);
      if (it == vars_.end()) fail("unknown variable " + name);
      return constant(Rational(it->second));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  const Bindings& vars_;
  size_t i_ = 0;
};

ExpectedValue expected_from_json(const nlohmann::json& j) {
  ExpectedValue v;
  v.coeff = j.at("coeff").get<std::string>();
  v.rpow = j.value("rpow", "0");
  v.harmonic = j.value("harmonic", "1");
  if (v.harmonic != "1" && v.harmonic != "S_lm" && v.harmonic != "S^lm")
    throw InputError("unknown harmonic " + v.harmonic);
  return v;
}

LabelTemplate label_from_json(const nlohmann::json& j) {
  LabelTemplate t;
  t.phi = j.value("phi", "0");
  if (j.contains("deriv"))
    t.deriv = j.at("deriv").is_boolean() ? (j.at("deriv").get<bool>() ? "1" : "0") : j.at("deriv").get<std::string>();
  return t;
}

}  // namespace

LogPoly eval_expression(const std::string& expr, const Bindings& vars) {
  LogPoly v = ExprParser(expr, vars).parse();
  logpoly_prune(v);
  return v;
}

long eval_integer(const std::string& expr, const Bindings& vars) { return integer_of(eval_expression(expr, vars)); }

MultiIndex LabelTemplate::instantiate(const Bindings& vars) const {
  MultiIndex m;
  long n = eval_integer(phi, vars);
  if (n < 0) throw DomainError("negative power in label template " + phi);
  if (n > 0) m.add({0, 0}, static_cast<int>(n));
  long nd = eval_integer(deriv, vars);
  if (nd < 0) throw DomainError("negative derivative count in label template " + deriv);
  if (nd > 0) m.add({static_cast<int>(vars.at("l")), static_cast<int>(vars.at("m"))}, static_cast<int>(nd));
  return m;
}

std::string LabelTemplate::text() const {
  std::string out;
  auto simple = [](const std::string& e) {
    for (char ch : e)
      if (!std::isalnum(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  if (phi != "0") out = phi == "1" ? "phi" : (simple(phi) ? "phi^" + phi : "phi^{" + phi + "}");
  if (deriv == "1") out += "d^lphi";
  else if (has_deriv()) out += "(d^lphi)^{" + deriv + "}";
  return out.empty() ? "1" : out;
}

RingElement ExpectedValue::instantiate(const Bindings& vars) const {
  LogPoly c = eval_expression(coeff, vars);
  long d = eval_integer(rpow, vars);
  int J = 0, M = 0;
  Rational sign = 1;
  if (harmonic != "1") {
    J = static_cast<int>(vars.at("l"));
    M = static_cast<int>(vars.at("m"));
    if (harmonic == "S^lm") {
      // S^{lm} = (−1)^m S_{l,−m}
      if (M % 2) sign = -1;
      M = -M;
    }
  }
  RingElement out;
  for (const auto& [p, s] : c) {
    if (p < 0) throw InputError("negative log power in expected value");
    TermKey k;
    k.d = static_cast<int>(d);
    k.p = p;
    k.J = J;
    k.M = M;
    out.add(k, s * Scalar(sign));
  }
  return out;
}

std::string TableRow::family() const {
  std::string left = k == "1" ? "phi" : (k.size() == 1 ? "phi^" + k : "phi^{" + k + "}");
  return std::to_string(n) + "|" + left + "|" + a.text() + "|" + c.text();
}

std::vector<TableRow> load_reference_table(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IOError("reference table not found: " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IOError("reference table unreadable: " + std::string(e.what()));
  }
  std::vector<TableRow> rows;
  try {
    for (const auto& r : j.at("rows")) {
      TableRow t;
      t.id = r.at("id").get<std::string>();
      t.n = r.at("n").get<int>();
      t.k = r.value("k", "1");
      t.a = label_from_json(r.at("a"));
      t.c = label_from_json(r.at("c"));
      t.p_min = r.value("p_min", 0L);
      t.l_min = r.value("l_min", 0L);
      if (r.contains("ranges"))
        for (const auto& [name, rg] : r.at("ranges").items())
          t.ranges[name] = {rg.at(0).get<long>(), rg.at(1).get<long>()};
      t.expect_unsupported = r.value("unsupported", false);
      if (!t.expect_unsupported) t.value = expected_from_json(r.at("value"));
      if (r.contains("corrected")) t.corrected = expected_from_json(r.at("corrected"));
      t.note = r.value("note", "");
      rows.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IOError("malformed reference table: " + std::string(e.what()));
  }
  return rows;
}

std::string default_reference_path() {
  if (const char* env = std::getenv("OPE_FORGE_DATA")) return std::string(env) + "/coefficient_table.json";
  return std::string(OPEFORGE_DATA_DIR) + "/coefficient_table.json";
}

bool ring_equal(const RingElement& a, const RingElement& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  std::set<TermKey> keys;
  for (const auto& kv : a.terms()) keys.insert(kv.first);
  for (const auto& kv : b.terms()) keys.insert(kv.first);
  for (const auto& k : keys) {
    auto ia = a.terms().find(k);
    auto ib = b.terms().find(k);
    Scalar sa = ia == a.terms().end() ? Scalar() : ia->second;
    Scalar sb = ib == b.terms().end() ? Scalar() : ib->second;
    double scale = 1.0 + std::max(std::abs(sa.to_double()), std::abs(sb.to_double()));
    if (!approx_equal(sa, sb, tol * scale)) return false;
  }
  return true;
}

TableCheckReport check_table(const std::vector<TableRow>& rows, const TableRanges& ranges) {
  TableCheckReport rep;
  for (const auto& row : rows) {
    if (!ranges.family_filter.empty() && row.family() != ranges.family_filter) continue;
    ++rep.rows;
    bool row_ok = true, corrected_ok = true;
    bool has_deriv = row.a.has_deriv() || row.c.has_deriv();
    // enumerate the extra parameters as an odometer
    std::vector<std::pair<std::string, std::pair<long, long>>> extra(row.ranges.begin(), row.ranges.end());
    std::vector<long> cur;
    for (const auto& e : extra) cur.push_back(e.second.first);
    for (bool more = true; more;) {
      for (long p = row.p_min; p <= ranges.p_max; ++p) {
        long lmax = has_deriv ? ranges.l_max : row.l_min;
        for (long l = row.l_min; l <= lmax; ++l) {
          for (long m = has_deriv ? -l : 0; m <= (has_deriv ? l : 0); ++m) {
            Bindings vars{{"p", p}, {"l", l}, {"m", m}};
            for (size_t t = 0; t < extra.size(); ++t) vars[extra[t].first] = cur[t];
            RowInstanceCheck ic;
            ic.row_id = row.id;
            ic.vars = vars;
            ic.query.n = row.n;
            ic.query.k = static_cast<int>(eval_integer(row.k, vars));
            if (ic.query.k < 1) continue;  // parameter corner without a left field
            ic.query.a = row.a.instantiate(vars);
            ic.query.c = row.c.instantiate(vars);
            ic.computed = compute_coefficient(ic.query);
            if (row.expect_unsupported) {
              ic.matches_published = ic.computed.status == CoefficientStatus::Unsupported;
              ic.detail = ic.matches_published ? "unsupported as expected" : "expected unsupported";
            } else if (ic.computed.status == CoefficientStatus::Unsupported) {
              ic.detail = "engine reports unsupported: " + ic.computed.missing_operator;
            } else {
              ic.expected = row.value.instantiate(vars);
              ic.matches_published = ring_equal(ic.computed.value, ic.expected);
              if (row.corrected)
                ic.matches_corrected = ring_equal(ic.computed.value, row.corrected->instantiate(vars));
              if (!ic.matches_published)
                ic.detail = "computed " + ic.computed.value.to_string() + ", published " + ic.expected.to_string();
            }
            row_ok = row_ok && ic.matches_published;
            corrected_ok = corrected_ok && (ic.matches_published || ic.matches_corrected);
            rep.instances.push_back(std::move(ic));
          }
        }
      }
      more = false;
      for (size_t t = 0; t < extra.size(); ++t) {
        if (++cur[t] <= extra[t].second.second) {
          more = true;
          break;
        }
        cur[t] = extra[t].second.first;
      }
    }
    if (row_ok) {
      ++rep.rows_pass;
    } else {
      rep.failing_rows.push_back(row.id);
      if (row.corrected && corrected_ok) rep.errata_rows.push_back(row.id);
    }
  }
  return rep;
}

}  // namespace opeforge
