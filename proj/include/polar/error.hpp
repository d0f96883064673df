#pragma once

#include <stdexcept>
#include <string>

namespace polar {

enum class ErrorKind {
  CompositeP,
  UnsupportedCharacteristic,
  DivisionByZero,
  FieldMismatch,
  DimensionMismatch,
  RangeError,
  IoError,
  FormatError,
  ParityError,
  NonIntegralSolution,
  ContextMismatch,
  NotSymplectic,
  DegreeError,
  ResourceCapExceeded,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure in a matrix file; `line` is 1-based.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error(ErrorKind::FormatError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace polar
