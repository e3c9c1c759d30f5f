#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deltakit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (empty text, bad range, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle was asked to run beyond its size guard.
class OracleLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// The grammar retry wrapper ran out of attempts under the size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Never expected in a correct build.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input. Carries the byte offset where decoding failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace deltakit
