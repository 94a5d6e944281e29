#pragma once

#include <vector>

#include "msect/solver.hpp"

namespace msect {

/// Per-loop cost t(N) = m*N + c. Both coefficients must be positive.
struct CostModel {
  double m = 0.0;
  double c = 0.0;

  CostModel() = default;
  CostModel(double m, double c);

  /// R = c / m.
  double ratio() const noexcept { return c / m; }
  double loop_time(int sections) const noexcept { return m * sections + c; }
};

struct ProblemScale {
  double width = 1.0;
  double mu = kMachinePrecision;

  ProblemScale() = default;
  ProblemScale(double width, double mu = kMachinePrecision);

  /// ln(width / mu), the common factor of T_f and T_t.
  double log_ratio() const noexcept;
};

struct CurvePoint {
  int sections = 0;
  double total_time = 0.0;
};

struct EfficiencyReport {
  double ratio = 0.0;
  double n_min_real = 0.0;
  int n_min_integer = 2;
  double rel_eff = 0.0;
  /// T_t(n_min_integer) / T_t(2), the ratio actually achievable with integer N.
  double rel_eff_integer = 0.0;
  double t_t_at_2 = 0.0;
  double t_t_at_min = 0.0;
  std::vector<CurvePoint> curve;
};

// The iteration count is kept continuous, ln(width/mu)/ln N, throughout.

/// T_f(N) = (N - 1) ln(width/mu) / ln N.
double total_function_evals(int sections, const ProblemScale& scale);

/// T_t(N) = (m N + c) ln(width/mu) / ln N.
double total_time(int sections, const CostModel& cost, const ProblemScale& scale);

/// N_min = R / W(R / e), the stationary point of T_t. Tends to e as R -> 0+.
double n_min_real(double ratio);

/// Integer section count minimising T_t: whichever of floor/ceil of
/// n_min_real (each at least 2) gives the smaller T_t, ties to the smaller N.
int n_min_integer(double ratio);
int n_min_integer(const CostModel& cost, const ProblemScale& scale);

/// T_t(N_min) / T_t(2) at the real-valued N_min. Depends on R only.
double rel_eff(double ratio);

/// Full report with the T_t curve over [n_lo, n_hi]. The integer N_min is
/// clamped into the range. Throws RangeError unless n_lo <= 2 <= n_hi.
EfficiencyReport efficiency_report(const CostModel& cost, const ProblemScale& scale, int n_lo,
                                   int n_hi);

}  // namespace msect
