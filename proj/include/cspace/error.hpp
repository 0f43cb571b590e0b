#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cspace {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Two values disagree about the domain structure they are defined on.
class DomainMismatchError : public Error {
 public:
  using Error::Error;
};

/// A set of cuboids has no common point, so it cannot form a core.
class EmptyIntersectionError : public Error {
 public:
  using Error::Error;
};

/// A size was requested over a dimension on which a cuboid is unbounded.
class UnboundedSizeError : public Error {
 public:
  using Error::Error;
};

/// Inclusion-exclusion over too many cuboids.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// The crossing-point search did not converge within its iteration budget.
class NumericFailureError : public Error {
 public:
  using Error::Error;
};

/// Malformed document text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed document text that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cspace
