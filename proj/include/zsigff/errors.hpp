#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zsigff {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated: mismatched characteristics,
/// division by zero, evaluation at a pole, off-curve points and so on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised when a pseudo-place over Q shares a proper factor with the function
/// being measured. The caller has to refine its gcd-free basis.
class AmbiguousPlace : public Error {
 public:
  using Error::Error;
};

/// A search with a fixed budget (torsion specialization, enclosure width)
/// ran out before producing a certified answer.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold failed. Never silenced.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), message_(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

}  // namespace zsigff
