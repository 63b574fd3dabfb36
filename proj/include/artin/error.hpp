#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace artin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input; `position()` is a 0-based offset into the text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        detail_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// Operands live in different variable contexts, fields or algebras.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the mathematical input does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured runtime budget was exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace artin
