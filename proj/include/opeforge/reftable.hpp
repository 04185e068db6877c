/** @file reftable.hpp
 *  @brief Parametric reference table of OPE coefficients: template rows, a small expression
 *  language for their values, instantiation and checking against the ope module. */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opeforge/ope.hpp"

namespace opeforge {

/// Values of template variables (p, l, k, ...).
using Bindings = std::map<std::string, long>;

/**
 * Evaluates an arithmetic expression to a polynomial in L = log r with rational coefficients.
 * Grammar: + - * / ^int, postfix !, parentheses, integers, variables, L, and the functions
 * D(d,J) (right-inverse factor D^(0)), cgd(l,u,s) = Σ_{l'≤u} Σ_J ⟨l l' 0 0|J 0⟩² D(l−l'+s, J)
 * and rphi2(d,j) = (R₁)_{φ²}(d, j, q=1) as a polynomial in L.
 */
LogPoly eval_expression(const std::string& expr, const Bindings& vars);
long eval_integer(const std::string& expr, const Bindings& vars);

/** Label template: φ^{phi} · (∂^lφ_m)^{deriv}. */
struct LabelTemplate {
  std::string phi = "0";
  std::string deriv = "0";
  bool has_deriv() const { return deriv != "0"; }
  MultiIndex instantiate(const Bindings& vars) const;
  std::string text() const;
};

/** Expected value: coeff(L) · r^{rpow} · harmonic, harmonic ∈ {"1", "S_lm", "S^lm"}. */
struct ExpectedValue {
  std::string coeff;
  std::string rpow = "0";
  std::string harmonic = "1";
  RingElement instantiate(const Bindings& vars) const;
};

struct TableRow {
  std::string id;
  int n = 0;
  std::string k = "1";
  LabelTemplate a;  // input state
  LabelTemplate c;  // output label
  long p_min = 0;
  long l_min = 0;
  /// Extra integer parameters (name → inclusive range), e.g. q or a generic k.
  std::map<std::string, std::pair<long, long>> ranges;
  ExpectedValue value;         // transcription of the published entry
  bool expect_unsupported = false;
  std::optional<ExpectedValue> corrected;  // set for rows flagged as errata
  std::string note;
  std::string family() const;  // "n|phi^k|a|c"
};

std::vector<TableRow> load_reference_table(const std::string& path);
std::string default_reference_path();

struct RowInstanceCheck {
  std::string row_id;
  Bindings vars;
  CoefficientQuery query;
  OpeCoefficient computed;
  RingElement expected;
  bool matches_published = false;
  bool matches_corrected = false;  // only meaningful for errata rows
  std::string detail;
};

struct TableCheckReport {
  std::vector<RowInstanceCheck> instances;
  int rows = 0;
  int rows_pass = 0;
  std::vector<std::string> failing_rows;  // mismatch against the published entry
  std::vector<std::string> errata_rows;   // flagged errata whose corrected value matches
  bool all_published_match() const { return failing_rows.empty(); }
};

struct TableRanges {
  long p_max = 5;
  long l_max = 4;
  std::string family_filter;  // empty: all
};

/// Instantiates every row over the ranges and compares with compute_coefficient.
TableCheckReport check_table(const std::vector<TableRow>& rows, const TableRanges& ranges);
/// Exact comparison; approximate terms compare within tol plus their error bounds.
bool ring_equal(const RingElement& a, const RingElement& b, double tol = 1e-12);

}  // namespace opeforge
