#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relcheck {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class DivisionByZero : public Error {
public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Numeric evaluation failed (unbound symbol, irrational branch, opaque atom, pole).
class EvaluationError : public Error {
public:
  using Error::Error;
};

class ChartMismatch : public Error {
public:
  ChartMismatch() : Error("operands live on different charts") {}
  using Error::Error;
};

/// Invalid argument to a geometric or algebraic operation.
class DomainError : public Error {
public:
  using Error::Error;
};

}  // namespace relcheck
