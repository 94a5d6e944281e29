#pragma once

#include <stdexcept>
#include <string>

namespace msect {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (mu <= 0, R <= 0, x < 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// f does not change sign across the supplied bracket.
class BracketError : public Error {
public:
  using Error::Error;
};

/// f returned NaN.
class EvaluationError : public Error {
public:
  using Error::Error;
};

class NoSignChangeError : public Error {
public:
  using Error::Error;
};

/// An iterative evaluation hit its cap; an implementation fault, not an input fault.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

class ClockError : public Error {
public:
  using Error::Error;
};

class DegenerateError : public Error {
public:
  using Error::Error;
};

/// Fitted cost model violates m > 0, c > 0.
class FitError : public Error {
public:
  using Error::Error;
};

class RangeError : public Error {
public:
  using Error::Error;
};

class BoundViolation : public Error {
public:
  BoundViolation(int iteration, const std::string& what)
      : Error(what), iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

private:
  int iteration_;
};

}  // namespace msect
