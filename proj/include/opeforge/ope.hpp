/** @file ope.hpp
 *  @brief OPE-coefficient constructors C_n^c_{φ^k a} for orders 0, 1, 2 and the maximal class. */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opeforge/angular.hpp"
#include "opeforge/fock.hpp"
#include "opeforge/special.hpp"
#include "opeforge/yring.hpp"

namespace opeforge {

/// Harmonic content of a coupled group: (J,M) → polynomial in log r.
using Block = std::map<JM, LogPoly>;

Block block_from_coupling(const CouplingResult& t, const Scalar& factor);
/// Couples two blocks with the harmonic product rule.
Block couple_blocks(const Block& a, const Block& b);
/// L^p S_J → L^p D^(p)(d, J) S_J (one application of the right inverse at grading d).
Block grade_block(const Block& b, int d);
void block_prune(Block& b);

/// Δ₀[𝔄] = s[𝔄]·T[𝔄].
Block delta0(const ModeMultiset& A);
/// Δ_n[𝔄] for card 𝔄 = 4n+1 by the recursion over five sub-groups.
Block delta_n(int n, const ModeMultiset& A);
/// Λ₁[φ², 𝔅] (card 4) or Λ₁[φ³, 𝔄] (card 3), including the factor 5 of (R₁)_{φ²}.
Block lambda1(int power, const ModeMultiset& A);

/// Scalar entries at fixed J (M is fixed by the multiset).
Scalar delta0(const ModeMultiset& A, int J);
LogPoly delta1(const ModeMultiset& A, int J);
LogPoly lambda1(int power, const ModeMultiset& A, int J);

struct CoefficientQuery {
  int n = 0;
  int k = 1;
  MultiIndex a;
  MultiIndex c;
  std::string to_string() const;
  nlohmann::json to_json() const;
  static CoefficientQuery from_json(const nlohmann::json& j);
};

enum class CoefficientStatus { Exact, Approx, Unsupported, Zero };
std::string status_name(CoefficientStatus s);

struct OpeCoefficient {
  CoefficientQuery query;
  RingElement value;
  CoefficientStatus status = CoefficientStatus::Zero;
  std::string method;
  std::string missing_operator;  // set when unsupported
  nlohmann::json to_json() const;
  static OpeCoefficient from_json(const nlohmann::json& j);
};

/// g(a,c) > 4n+k or g(a,c)+k odd.
bool vanishes(int n, int k, const MultiIndex& a, const MultiIndex& c);
/// 𝐝 = |c| − |a| − k/2.
int coefficient_grading(const MultiIndex& a, const MultiIndex& c, int k);

RingElement c0_phik(const MultiIndex& a, const MultiIndex& c, int k);
/// Left slot b: φ^k or the vacuum; derivative factors in b are unsupported.
RingElement c0_general(const MultiIndex& a, const MultiIndex& b, const MultiIndex& c);
RingElement c1_phi(const MultiIndex& a, const MultiIndex& c);
RingElement c1_phi2(const MultiIndex& a, const MultiIndex& c);
/// k ≥ 2; throws UnsupportedError at or below the remainder threshold g ≤ k−2 (k ≥ 3).
RingElement c1_phik(const MultiIndex& a, const MultiIndex& c, int k);
RingElement c2_phi(const MultiIndex& a, const MultiIndex& c);
/// Maximal class g(a,c) = 4n+k; InputError otherwise.
RingElement cn_max(const MultiIndex& a, const MultiIndex& c, int n, int k);

struct StructuralReport {
  bool log_ok = true;
  bool grading_ok = true;
  std::vector<std::string> violations;
  bool ok() const { return log_ok && grading_ok; }
};
StructuralReport structural_checks(const RingElement& value, const CoefficientQuery& q);

/// Dispatches to the order-specific constructor; results are cached.
OpeCoefficient compute_coefficient(const CoefficientQuery& q);
void clear_coefficient_cache();
size_t coefficient_cache_size();
/// Version tag written to cache files; a mismatch invalidates the file on load.
const std::string& engine_version();
/// Persistent cache file: a version header line, then JSON lines of OpeCoefficient.
void save_coefficient_cache(const std::string& path);
size_t load_coefficient_cache(const std::string& path);

/** Constraints on the unknown (R₁)_{φ⁴}, stored verbatim with the constant c symbolic. */
struct KnownRemainderFact {
  std::string operator_name;
  std::string component;  // "[out]_{in}"
  std::string value;
};
const std::vector<KnownRemainderFact>& known_remainder_facts();

}  // namespace opeforge
