/** @file yring.hpp
 *  @brief Ring of terms scalar · r^d (log r)^p S_{JM}, its Laplacian and right inverse. */
#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opeforge/exactnum.hpp"
#include "opeforge/fock.hpp"

namespace opeforge {

/** Normal-ordered ladder word: creations to the left of annihilations. */
struct NormalMonomial {
  std::vector<AngularLabel> creations;
  std::vector<AngularLabel> annihilations;

  NormalMonomial() = default;
  NormalMonomial(std::vector<AngularLabel> c, std::vector<AngularLabel> a);
  bool is_identity() const { return creations.empty() && annihilations.empty(); }
  ModeMultiset as_multiset() const;
  auto operator<=>(const NormalMonomial&) const = default;
  std::string to_string() const;
};

/// Wick expansion of a·b back into normal order with multiplicities.
std::vector<std::pair<NormalMonomial, BigInt>> normal_order_product(const NormalMonomial& a,
                                                                     const NormalMonomial& b);

struct TermKey {
  int d = 0;    // power of r
  int p = 0;    // power of log r
  int pmu = 0;  // power of the opaque symbol log μ
  int J = 0;
  int M = 0;
  std::optional<NormalMonomial> ladder;
  auto operator<=>(const TermKey&) const = default;
};

/// Σ_p c_p (log r)^p; negative keys appear inside D^(p) before multiplying by (log r)^p.
using LogPoly = std::map<int, Scalar>;

LogPoly logpoly_mul(const LogPoly& a, const LogPoly& b);
void logpoly_add(LogPoly& a, const LogPoly& b);
void logpoly_prune(LogPoly& a);

class RingElement {
 public:
  using Map = std::map<TermKey, Scalar>;

  RingElement() = default;
  static RingElement term(const Scalar& s, int d, int p, int J, int M);

  void add(const TermKey& k, const Scalar& s);
  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const;
  bool has_ladder() const;

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement operator-() const;
  RingElement& operator*=(const Scalar& s);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const Scalar& s) { return a *= s; }
  bool operator==(const RingElement& o) const;

  /// Max power of log r (−1 for zero).
  int max_log_power() const;
  /// Sum over M of terms at fixed (d, p, J) as a readable string.
  std::string to_string() const;
  nlohmann::json to_json() const;
  static RingElement from_json(const nlohmann::json& j);

  /// Numeric value at radius r and direction (θ,φ); log μ = lambda.
  std::complex<double> evaluate(double r, double theta, double phi, double lambda = 0.0) const;

 private:
  Map terms_;
};

/// e(d,J) = (d − J)(d + D − 2 + J).
long laplace_eigen(int d, int J, int D);

RingElement laplacian(const RingElement& e, int D = 3);
/// D^(p)(d,J): □⁻¹[r^{d−2} (log r)^p S_J] = r^d (log r)^p D^(p)(d,J) S_J.
LogPoly d_factor(int d, int J, int p, int D = 3);
/// With symbolic_mu, logs produced by □⁻¹ are log(μr) and the log μ power is tracked in pmu.
RingElement inverse_laplacian(const RingElement& e, int D = 3, bool symbolic_mu = false);
/// Replaces ladder words by their normal-ordered matrix elements ⟨b| · |a⟩.
RingElement matrix_element(const RingElement& e, const MultiIndex& a, const MultiIndex& b);

}  // namespace opeforge
