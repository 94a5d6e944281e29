#include "msect/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "msect/errors.hpp"
#include "msect/sweep_io.hpp"

namespace msect {

namespace {

SolveOptions bench_options(int sections, double width_tolerance) {
  SolveOptions options;
  options.sections = sections;
  options.width_tolerance = width_tolerance;
  options.residual_tolerance = 0.0;
  options.record_trace = false;
  return options;
}

int timed_iterations(const Problem& problem, const SolveOptions& options) {
  const int iterations = solve(problem, options).iterations;
  if (iterations == 0) {
    throw DomainError("'" + problem.id + "' terminates before the first loop; nothing to time");
  }
  return iterations;
}

}  // namespace

std::vector<int> default_section_range() {
  std::vector<int> values;
  for (int n = 2; n <= 250; ++n) values.push_back(n);
  return values;
}

TimingSample measure_loop_time(const Problem& problem, int sections, std::int64_t min_loops,
                               std::int64_t warmup_loops, Clock& clock, double width_tolerance) {
  if (sections < 2) throw DomainError("section count N must satisfy N >= 2");
  if (min_loops < 1) throw DomainError("min_loops must be at least 1");
  if (warmup_loops < 0) throw DomainError("warmup_loops must be non-negative");
  validate_bracket(problem);
  const SolveOptions options = bench_options(sections, width_tolerance);

  for (std::int64_t warm = 0; warm < warmup_loops;) {
    const int iterations = timed_iterations(problem, options);
    clock.account_loops(sections, iterations);
    warm += iterations;
  }

  double total = 0.0;
  std::int64_t loops = 0;
  // Welford over per-solve loop times.
  std::int64_t solves = 0;
  double mean = 0.0;
  double m2 = 0.0;
  while (loops < min_loops) {
    const double start = clock.now();
    const int iterations = timed_iterations(problem, options);
    clock.account_loops(sections, iterations);
    const double elapsed = clock.now() - start;

    total += elapsed;
    loops += iterations;
    const double per_loop = elapsed / iterations;
    ++solves;
    const double delta = per_loop - mean;
    mean += delta / static_cast<double>(solves);
    m2 += delta * (per_loop - mean);
  }

  if (clock.resolution() > 0.01 * total) {
    throw ClockError("clock tick " + std::to_string(clock.resolution()) +
                     " s exceeds 1% of the measured total " + std::to_string(total) + " s");
  }
  if (!(total > 0.0)) {
    throw ClockError("measured no elapsed time at N = " + std::to_string(sections));
  }

  TimingSample sample;
  sample.sections = sections;
  sample.mean_loop_seconds = total / static_cast<double>(loops);
  sample.stddev_loop_seconds = solves > 1 ? std::sqrt(m2 / static_cast<double>(solves - 1)) : 0.0;
  sample.loop_count = loops;
  return sample;
}

std::vector<TimingSample> sweep(const Problem& problem, const SweepConfig& config, Clock& clock,
                                std::ostream* progress) {
  std::vector<int> values = config.n_values;
  if (values.empty()) throw DomainError("sweep needs at least one N");
  for (int n : values) {
    if (n < 2) throw DomainError("every swept N must be >= 2, got " + std::to_string(n));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<TimingSample> samples;
  samples.reserve(values.size());
  for (int n : values) {
    samples.push_back(measure_loop_time(problem, n, config.min_loops, config.warmup_loops, clock,
                                        config.width_tolerance));
    if (progress) {
      *progress << "sweep " << problem.id << " N=" << n
                << " mean_loop_seconds=" << samples.back().mean_loop_seconds << '\n';
    }
  }
  return samples;
}

LinearFit fit_linear(std::span<const TimingSample> samples) {
  if (samples.size() < 2) {
    throw DegenerateError("a linear fit needs at least two samples");
  }
  // Exact duplicates are folded into multiplicities, so repeating the whole
  // sample set k times reproduces the fit bit for bit.
  std::map<std::pair<int, double>, std::int64_t> counts;
  for (const TimingSample& s : samples) {
    ++counts[{s.sections, s.mean_loop_seconds}];
  }
  const auto total = static_cast<double>(samples.size());
  const int first_n = counts.begin()->first.first;
  if (std::all_of(counts.begin(), counts.end(),
                  [&](const auto& kv) { return kv.first.first == first_n; })) {
    throw DegenerateError("a linear fit needs at least two distinct N");
  }

  double x_bar = 0.0;
  double y_bar = 0.0;
  for (const auto& [key, count] : counts) {
    const double w = static_cast<double>(count) / total;
    x_bar += w * key.first;
    y_bar += w * key.second;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [key, count] : counts) {
    const double w = static_cast<double>(count) / total;
    const double dx = key.first - x_bar;
    const double dy = key.second - y_bar;
    sxx += w * dx * dx;
    sxy += w * dx * dy;
    syy += w * dy * dy;
  }

  LinearFit fit;
  fit.sample_count = samples.size();
  fit.m = sxy / sxx;
  fit.c = y_bar - fit.m * x_bar;
  double ss_res = 0.0;
  for (const auto& [key, count] : counts) {
    const double w = static_cast<double>(count) / total;
    const double r = key.second - (fit.m * key.first + fit.c);
    ss_res += w * r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;

  if (!(fit.m > 0.0) || !(fit.c > 0.0)) {
    throw FitError("fitted loop cost m*N + c has m = " + format_double(fit.m) +
                   ", c = " + format_double(fit.c) + "; both must be positive");
  }
  return fit;
}

double measure_solve_time(const Problem& problem, int sections, std::int64_t min_loops,
                          Clock& clock, double width_tolerance) {
  if (min_loops < 1) throw DomainError("min_loops must be at least 1");
  const SolveOptions options = bench_options(sections, width_tolerance);
  double total = 0.0;
  std::int64_t loops = 0;
  std::int64_t solves = 0;
  while (loops < min_loops) {
    const double start = clock.now();
    const int iterations = timed_iterations(problem, options);
    clock.account_loops(sections, iterations);
    total += clock.now() - start;
    loops += iterations;
    ++solves;
  }
  return total / static_cast<double>(solves);
}

Calibration calibrate_from_samples(const Problem& problem, const SweepConfig& config,
                                   std::vector<TimingSample> samples, Clock& clock) {
  Calibration cal;
  cal.samples = std::move(samples);
  cal.fit = fit_linear(cal.samples);

  const CostModel cost(cal.fit.m, cal.fit.c);
  const ProblemScale scale(problem.bracket.width(), config.width_tolerance);
  int n_hi = 2;
  for (const TimingSample& s : cal.samples) n_hi = std::max(n_hi, s.sections);
  cal.report = efficiency_report(cost, scale, 2, n_hi);

  cal.solve_seconds_at_2 =
      measure_solve_time(problem, 2, config.min_loops, clock, config.width_tolerance);
  cal.solve_seconds_at_min = measure_solve_time(problem, cal.report.n_min_integer,
                                                config.min_loops, clock, config.width_tolerance);
  cal.measured_ratio = cal.solve_seconds_at_min / cal.solve_seconds_at_2;
  return cal;
}

Calibration calibrate(const Problem& problem, const SweepConfig& config, Clock& clock,
                      std::ostream* progress) {
  return calibrate_from_samples(problem, config, sweep(problem, config, clock, progress), clock);
}

}  // namespace msect
