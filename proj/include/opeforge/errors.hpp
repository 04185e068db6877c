/** @file errors.hpp
 *  @brief Error taxonomy shared by all modules. */
#pragma once

#include <stdexcept>
#include <string>

namespace opeforge {

enum class ErrorKind { Input, Domain, Divergence, Unsupported, Integrity, IO };

class OpeError : public std::runtime_error {
 public:
  OpeError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InputError : OpeError {
  explicit InputError(const std::string& w) : OpeError(ErrorKind::Input, w) {}
};
struct DomainError : OpeError {
  explicit DomainError(const std::string& w) : OpeError(ErrorKind::Domain, w) {}
};
struct DivergenceError : OpeError {
  explicit DivergenceError(const std::string& w) : OpeError(ErrorKind::Divergence, w) {}
};
struct IntegrityError : OpeError {
  explicit IntegrityError(const std::string& w) : OpeError(ErrorKind::Integrity, w) {}
};
struct IOError : OpeError {
  explicit IOError(const std::string& w) : OpeError(ErrorKind::IO, w) {}
};

/// Raised when a coefficient needs a remainder operator with no known closed form.
class UnsupportedError : public OpeError {
 public:
  UnsupportedError(const std::string& missing_operator, const std::string& detail)
      : OpeError(ErrorKind::Unsupported,
                 "unsupported: requires " + missing_operator + " (" + detail + ")"),
        missing_(missing_operator) {}
  const std::string& missing_operator() const noexcept { return missing_; }

 private:
  std::string missing_;
};

}  // namespace opeforge
