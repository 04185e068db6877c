/** @file labels.hpp
 *  @brief Angular labels, signed modes and mode multisets. */
#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace opeforge {

struct AngularLabel {
  int l = 0;
  int m = 0;
  auto operator<=>(const AngularLabel&) const = default;
  bool valid() const { return l >= 0 && m >= -l && m <= l; }
  std::string to_string() const;
};

/// '+' is a creation entry (conjugate harmonic S^{lm}), '-' an annihilation entry (S_{lm}).
enum class Sign : int { Minus = 0, Plus = 1 };

struct SignedMode {
  Sign sign = Sign::Plus;
  AngularLabel mode;
  auto operator<=>(const SignedMode&) const = default;
  bool creation() const { return sign == Sign::Plus; }
  std::string to_string() const;
};

/** Multiset of signed modes: base set plus multiplicity function. */
class ModeMultiset {
 public:
  using Map = std::map<SignedMode, int>;

  ModeMultiset() = default;
  explicit ModeMultiset(const std::vector<SignedMode>& elems);

  void add(const SignedMode& x, int count = 1);
  /// Removes count copies; throws InputError if not present.
  void remove(const SignedMode& x, int count = 1);
  int count(const SignedMode& x) const;
  int cardinality() const;
  bool empty() const { return m_.empty(); }
  const Map& items() const { return m_; }
  /// Elements listed with repetition in canonical order.
  std::vector<SignedMode> elements() const;
  int annihilator_count() const;
  bool operator==(const ModeMultiset&) const = default;
  bool operator<(const ModeMultiset& o) const { return m_ < o.m_; }
  std::string to_string() const;

 private:
  Map m_;
};

}  // namespace opeforge
