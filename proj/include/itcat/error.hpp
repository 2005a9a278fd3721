#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itcat {

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Spaces, monads or dimensions of two operands do not line up.
struct MismatchError : Error {
  using Error::Error;
};

/// Index, cardinality or enumeration bound out of the supported range.
struct RangeError : Error {
  using Error::Error;
};

/// Input is well-formed but outside what an operation supports.
struct UnsupportedError : Error {
  using Error::Error;
};

/// A value violates a domain invariant (row normalization, PSD, ...).
struct ValidationError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace itcat
