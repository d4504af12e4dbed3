#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace binpack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value or generator parameter violates its stated constraints.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed; `line()` is 1-based (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shapes of arguments disagree (e.g. assignment length vs. instance size).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A decision procedure asked the executor for an infeasible action.
class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& what, std::size_t step)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A decision procedure exceeded its action budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// The exact solver refuses instances above its configured size.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A proven inequality failed to hold; always indicates a bug in the
/// executor or in an instance construction.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace binpack
