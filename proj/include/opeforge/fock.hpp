/** @file fock.hpp
 *  @brief Fock-space combinatorics in the monomial labeling convention. */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opeforge/exactnum.hpp"
#include "opeforge/labels.hpp"

namespace opeforge {

/** Occupation map (l,m) → count ≥ 1 labeling a basis monomial. */
class MultiIndex {
 public:
  using Map = std::map<AngularLabel, int>;

  MultiIndex() = default;
  static MultiIndex phi_power(int p);
  /// Grammar: factors joined by ';' or '*': "1", "phi", "phi^p", "l,m:count", "d<l>phi_<m>".
  static MultiIndex parse(const std::string& text);

  int count(const AngularLabel& x) const;
  void add(const AngularLabel& x, int n = 1);
  const Map& occupations() const { return occ_; }
  bool is_vacuum() const { return occ_.empty(); }
  int total() const;
  /// Σ a_{lm}(l + 1/2).
  Rational dimension() const;
  bool operator==(const MultiIndex&) const = default;
  bool operator<(const MultiIndex& o) const { return occ_ < o.occ_; }

  /// Canonical "l,m:count;..." ("1" for the vacuum).
  std::string to_string() const;
  /// Readable product form such as "phi^2*d1phi_0".
  std::string pretty() const;
  nlohmann::json to_json() const;
  static MultiIndex from_json(const nlohmann::json& j);

 private:
  Map occ_;
};

int metric_g(const MultiIndex& a, const MultiIndex& b);

ModeMultiset multiset_sum(const ModeMultiset& a, const ModeMultiset& b);
ModeMultiset multiset_union(const ModeMultiset& a, const ModeMultiset& b);
ModeMultiset multiset_intersection(const ModeMultiset& a, const ModeMultiset& b);
bool multiset_includes(const ModeMultiset& outer, const ModeMultiset& inner);
ModeMultiset multiset_difference(const ModeMultiset& outer, const ModeMultiset& inner);

struct LadderResult {
  Rational factor;
  std::optional<MultiIndex> result;  // empty when the state vanished
};
LadderResult ladder_apply(const SignedMode& mode, const MultiIndex& a);

/// n!/∏ f(x)! for the multiplicity profile f.
BigInt symmetry_factor(const ModeMultiset& A);
/// Normal-ordered matrix element: annihilators on a first, then creators; 0 unless result is b.
Rational ladder_prefactor(const MultiIndex& a, const MultiIndex& b, const ModeMultiset& A);
/// All multisets of cardinality n with a nonzero normal-ordered matrix element a → b.
std::vector<ModeMultiset> index_sets(const MultiIndex& a, const MultiIndex& b, int n);
/// Distinct ordered tuples of sub-multisets with the given cardinalities.
std::vector<std::vector<ModeMultiset>> partitions(const ModeMultiset& A, const std::vector<int>& sizes);
/// Σ_creation (l+1/2) − Σ_annihilation (l+1/2) − 1/2.
Rational d_of_multiset(const ModeMultiset& A);

}  // namespace opeforge
