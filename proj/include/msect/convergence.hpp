#pragma once

#include <string>
#include <vector>

#include "msect/solver.hpp"

namespace msect {

/// Root of the published counterexample to linear convergence of bisection.
/// Its defining function is not available, so nothing here computes with it.
inline constexpr double kCounterexampleRoot = 0.564468413605939;

/// Halving count to reach zero as reported for the original experimental
/// platform. Kept for comparison output only.
inline constexpr int kReportedUnderflowExponent = 1024;

/// Error-bound sequence B_i = initial_width / base^i.
struct BoundSequence {
  double initial_width = 1.0;
  int base = 2;

  BoundSequence() = default;
  BoundSequence(double initial_width, int base);
};

/// B_i by i repeated binary64 divisions, the way an iterating solver shrinks
/// its interval, so underflow happens where it would in the solver.
double bound_at(const BoundSequence& seq, int i);

/// Smallest i with B_i <= eps. Requires 0 < eps <= initial_width.
int first_index_below(const BoundSequence& seq, double eps);

enum class UnderflowMode {
  /// IEEE 754 gradual underflow through the subnormal range.
  Gradual,
  /// Any subnormal result is replaced by zero (abrupt underflow).
  FlushToZero,
};

/// Smallest z such that halving `width` z times yields exactly 0.
int underflow_exponent(double width, UnderflowMode mode = UnderflowMode::Gradual);

/// True when DBL_MIN / 2 is nonzero at run time.
bool host_supports_subnormals();

struct BoundCheck {
  int iteration = 0;
  double estimate = 0.0;
  double error = 0.0;
  double bound = 0.0;

  double margin() const noexcept { return bound - error; }
  bool holds() const noexcept { return error <= bound; }
};

struct BoundReport {
  std::string problem_id;
  int sections = 2;
  std::vector<BoundCheck> checks;

  std::vector<BoundCheck> violations() const;
  bool ok() const;
};

/// Solves with a full trace and compares |estimate_i - reference_root|
/// against B_i at every iteration. Violations are reported, not thrown.
/// Throws DomainError when the problem has no reference root.
BoundReport check_error_bounds(const Problem& problem, int sections);

/// As check_error_bounds, but throws BoundViolation naming the first
/// iteration where the bound fails.
BoundReport verify_error_bounds(const Problem& problem, int sections);

}  // namespace msect
