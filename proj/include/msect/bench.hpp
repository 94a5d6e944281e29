#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "msect/clock.hpp"
#include "msect/model.hpp"
#include "msect/solver.hpp"

namespace msect {

/// One point of a calibration sweep.
struct TimingSample {
  int sections = 0;
  double mean_loop_seconds = 0.0;
  /// Spread of the per-solve loop times within the measurement phase.
  double stddev_loop_seconds = 0.0;
  std::int64_t loop_count = 0;
};

struct LinearFit {
  double m = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
  std::size_t sample_count = 0;

  /// Two points always fit a line exactly; r^2 says nothing then.
  bool low_confidence() const noexcept { return sample_count < 3; }
};

/// All integers in [2, 250].
std::vector<int> default_section_range();

struct SweepConfig {
  std::vector<int> n_values = default_section_range();
  std::int64_t min_loops = 1000;
  std::int64_t warmup_loops = 100;
  double width_tolerance = kMachinePrecision;
};

/// Mean wall time of one solver loop at N sections.
///
/// Runs complete solves (residual tolerance 0, no trace) until
/// `warmup_loops` loops have passed, discards them, then keeps solving until
/// at least `min_loops` more loops have been timed. Each solve is timed as a
/// whole; the mean is total measured time over total loops. Throws
/// ClockError when the clock tick exceeds 1% of the measured total.
TimingSample measure_loop_time(const Problem& problem, int sections, std::int64_t min_loops,
                               std::int64_t warmup_loops, Clock& clock,
                               double width_tolerance = kMachinePrecision);

/// One sample per distinct N, ascending. Progress lines go to `progress` when non-null.
std::vector<TimingSample> sweep(const Problem& problem, const SweepConfig& config, Clock& clock,
                                std::ostream* progress = nullptr);

/// Ordinary least squares of mean loop time on N.
///
/// Throws DegenerateError with fewer than two distinct N and FitError when
/// the fitted slope or intercept is not positive.
LinearFit fit_linear(std::span<const TimingSample> samples);

struct Calibration {
  std::vector<TimingSample> samples;
  LinearFit fit;
  EfficiencyReport report;
  /// Mean wall time of one complete solve at N = 2 and at the integer N_min.
  double solve_seconds_at_2 = 0.0;
  double solve_seconds_at_min = 0.0;
  double measured_ratio = 0.0;
};

/// Mean wall time of a complete solve at N sections, averaged over enough
/// solves to cover at least `min_loops` loops.
double measure_solve_time(const Problem& problem, int sections, std::int64_t min_loops,
                          Clock& clock, double width_tolerance = kMachinePrecision);

/// Sweep, fit, build the efficiency report for R = c/m, then time full
/// solves at N = 2 and at N_min to set the measured ratio beside rel_eff.
Calibration calibrate(const Problem& problem, const SweepConfig& config, Clock& clock,
                      std::ostream* progress = nullptr);

/// The stages of calibrate() after the sweep, for callers that persist the
/// samples before fitting.
Calibration calibrate_from_samples(const Problem& problem, const SweepConfig& config,
                                   std::vector<TimingSample> samples, Clock& clock);

}  // namespace msect
