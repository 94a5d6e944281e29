#include "msect/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "msect/errors.hpp"
#include "msect/lambert.hpp"

namespace msect {

namespace {

void require_sections(int sections) {
  if (sections < 2) {
    throw DomainError("section count N must satisfy N >= 2, got " + std::to_string(sections));
  }
}

void require_ratio(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw DomainError("cost ratio R = c/m must be positive and finite");
  }
}

// T_t up to the positive factor m * ln(width/mu); enough for argmin.
double shape(int sections, double ratio) {
  return (sections + ratio) / std::log(static_cast<double>(sections));
}

}  // namespace

CostModel::CostModel(double m_, double c_) : m(m_), c(c_) {
  if (!(m > 0.0) || !(c > 0.0) || !std::isfinite(m) || !std::isfinite(c)) {
    throw DomainError("cost model requires m > 0 and c > 0");
  }
}

ProblemScale::ProblemScale(double width_, double mu_) : width(width_), mu(mu_) {
  if (!(mu > 0.0) || !(width > mu) || !std::isfinite(width)) {
    throw DomainError("problem scale requires width > mu > 0");
  }
}

double ProblemScale::log_ratio() const noexcept { return std::log(width) - std::log(mu); }

double total_function_evals(int sections, const ProblemScale& scale) {
  require_sections(sections);
  if (!(scale.width > scale.mu)) throw DomainError("width must exceed mu");
  return (sections - 1) * scale.log_ratio() / std::log(static_cast<double>(sections));
}

double total_time(int sections, const CostModel& cost, const ProblemScale& scale) {
  require_sections(sections);
  if (!(scale.width > scale.mu)) throw DomainError("width must exceed mu");
  return cost.loop_time(sections) * scale.log_ratio() / std::log(static_cast<double>(sections));
}

double n_min_real(double ratio) {
  require_ratio(ratio);
  return ratio / lambert_w0(ratio / std::numbers::e);
}

int n_min_integer(double ratio) {
  const double n = n_min_real(ratio);
  const int lower = std::max(2, static_cast<int>(std::floor(n)));
  const int upper = std::max(2, static_cast<int>(std::ceil(n)));
  return shape(upper, ratio) < shape(lower, ratio) ? upper : lower;
}

int n_min_integer(const CostModel& cost, const ProblemScale& scale) {
  const double n = n_min_real(cost.ratio());
  const int lower = std::max(2, static_cast<int>(std::floor(n)));
  const int upper = std::max(2, static_cast<int>(std::ceil(n)));
  return total_time(upper, cost, scale) < total_time(lower, cost, scale) ? upper : lower;
}

double rel_eff(double ratio) {
  const double n = n_min_real(ratio);
  return (ratio * std::numbers::ln2 / (2.0 + ratio)) * ((n + ratio) / (ratio * std::log(n)));
}

EfficiencyReport efficiency_report(const CostModel& cost, const ProblemScale& scale, int n_lo,
                                   int n_hi) {
  if (!(n_lo <= 2 && 2 <= n_hi)) {
    throw RangeError("section range [" + std::to_string(n_lo) + ", " + std::to_string(n_hi) +
                     "] must contain 2");
  }
  const int lo = std::max(n_lo, 2);

  EfficiencyReport report;
  report.ratio = cost.ratio();
  report.n_min_real = n_min_real(report.ratio);
  // T_t is unimodal in N, so clamping the unconstrained argmin gives the
  // argmin over the range.
  report.n_min_integer = std::clamp(n_min_integer(cost, scale), lo, n_hi);
  report.rel_eff = rel_eff(report.ratio);
  report.t_t_at_2 = total_time(2, cost, scale);
  report.t_t_at_min = total_time(report.n_min_integer, cost, scale);
  report.rel_eff_integer = report.t_t_at_min / report.t_t_at_2;

  report.curve.reserve(static_cast<std::size_t>(n_hi - lo + 1));
  for (int n = lo; n <= n_hi; ++n) {
    report.curve.push_back({n, total_time(n, cost, scale)});
  }
  return report;
}

}  // namespace msect
