/** @file labels.cpp
 *  @brief Label and multiset basics. */
#include "opeforge/labels.hpp"

#include <sstream>

#include "opeforge/errors.hpp"

namespace opeforge {

std::string AngularLabel::to_string() const {
  return "(" + std::to_string(l) + "," + std::to_string(m) + ")";
}

std::string SignedMode::to_string() const {
  return std::string(creation() ? "+" : "-") + mode.to_string();
}

ModeMultiset::ModeMultiset(const std::vector<SignedMode>& elems) {
  for (const auto& e : elems) add(e);
}

void ModeMultiset::add(const SignedMode& x, int count) {
  if (count < 0) throw InputError("negative multiplicity");
  if (!x.mode.valid()) throw InputError("invalid angular label " + x.mode.to_string());
  if (count == 0) return;
  m_[x] += count;
}

void ModeMultiset::remove(const SignedMode& x, int count) {
  auto it = m_.find(x);
  if (it == m_.end() || it->second < count) throw InputError("removing absent element " + x.to_string());
  it->second -= count;
  if (it->second == 0) m_.erase(it);
}

int ModeMultiset::count(const SignedMode& x) const {
  auto it = m_.find(x);
  return it == m_.end() ? 0 : it->second;
}

int ModeMultiset::cardinality() const {
  int n = 0;
  for (const auto& kv : m_) n += kv.second;
  return n;
}

std::vector<SignedMode> ModeMultiset::elements() const {
  std::vector<SignedMode> out;
  for (const auto& [x, c] : m_)
    for (int i = 0; i < c; ++i) out.push_back(x);
  return out;
}

int ModeMultiset::annihilator_count() const {
  int n = 0;
  for (const auto& [x, c] : m_)
    if (!x.creation()) n += c;
  return n;
}

std::string ModeMultiset::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [x, c] : m_) {
    if (!first) os << ",";
    first = false;
    os << x.to_string();
    if (c > 1) os << "^" << c;
  }
  os << "}";
  return os.str();
}

}  // namespace opeforge
