#include "msect/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msect/errors.hpp"

namespace msect {

namespace {

struct StepOutcome {
  Interval chosen;
  std::optional<double> exact_root;
  std::optional<NodeValue> residual_node;
};

// Evaluates all N-1 nodes into `nodes`, then picks the leftmost
// sign-changing subinterval. Node positions are recomputed from lo/hi on
// every call so rounding never accumulates across iterations.
StepOutcome step_core(const Interval& interval, const Function& f, int sections, Sign lo_sign,
                      Sign hi_sign, double residual_tolerance, std::vector<NodeValue>& nodes) {
  const double width = interval.width();
  nodes.resize(static_cast<std::size_t>(sections - 1));
  for (int j = 1; j < sections; ++j) {
    const double x =
        std::clamp(interval.lo + (static_cast<double>(j) * width) / sections, interval.lo, interval.hi);
    const double fx = f(x);
    if (std::isnan(fx)) {
      throw EvaluationError("f returned NaN at x = " + std::to_string(x));
    }
    nodes[static_cast<std::size_t>(j - 1)] = {x, fx};
  }

  StepOutcome out;
  for (const NodeValue& node : nodes) {
    if (node.fx == 0.0) {
      out.exact_root = node.x;
      out.chosen = {node.x, node.x};
      return out;
    }
  }
  if (residual_tolerance > 0.0) {
    for (const NodeValue& node : nodes) {
      if (std::abs(node.fx) <= residual_tolerance) {
        out.residual_node = node;
        break;
      }
    }
  }

  double previous = interval.lo;
  for (const NodeValue& node : nodes) {
    if (sign_of(node.fx) != lo_sign) {
      out.chosen = {previous, node.x};
      return out;
    }
    previous = node.x;
  }
  if (hi_sign == lo_sign) {
    throw NoSignChangeError("no sign change across [" + std::to_string(interval.lo) + ", " +
                            std::to_string(interval.hi) + "]");
  }
  out.chosen = {previous, interval.hi};
  return out;
}

void require_sections(int sections) {
  if (sections < 2) {
    throw DomainError("section count N must satisfy N >= 2, got " + std::to_string(sections));
  }
}

IterationRecord make_record(int index, const Interval& before, const std::vector<NodeValue>& nodes,
                            const StepOutcome& out) {
  IterationRecord rec;
  rec.index = index;
  rec.interval_before = before;
  rec.evaluated_nodes = nodes;
  rec.chosen_subinterval = out.chosen;
  rec.exact_root = out.exact_root;
  if (out.residual_node) {
    rec.residual_root = out.residual_node->x;
  }
  return rec;
}

}  // namespace

Interval make_interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("interval endpoints must be finite");
  }
  if (!(lo < hi)) {
    throw DomainError("interval requires lo < hi");
  }
  return {lo, hi};
}

Sign sign_of(double value) {
  if (std::isnan(value)) {
    throw EvaluationError("sign of NaN");
  }
  if (value > 0.0) return Sign::Positive;
  if (value < 0.0) return Sign::Negative;
  return Sign::Zero;
}

double IterationRecord::estimate() const noexcept {
  if (exact_root) return *exact_root;
  if (residual_root) return *residual_root;
  return chosen_subinterval.midpoint();
}

const char* to_string(Termination t) noexcept {
  switch (t) {
    case Termination::ExactZero: return "ExactZero";
    case Termination::WidthReached: return "WidthReached";
    case Termination::ResidualReached: return "ResidualReached";
    case Termination::MaxIterations: return "MaxIterations";
  }
  return "Unknown";
}

std::pair<Sign, Sign> validate_bracket(const Problem& problem) {
  const Interval& b = problem.bracket;
  make_interval(b.lo, b.hi);
  const double flo = problem.f(b.lo);
  const double fhi = problem.f(b.hi);
  if (std::isnan(flo) || std::isnan(fhi)) {
    throw EvaluationError("f returned NaN at a bracket endpoint of '" + problem.id + "'");
  }
  const Sign slo = sign_of(flo);
  const Sign shi = sign_of(fhi);
  if (static_cast<int>(slo) * static_cast<int>(shi) > 0) {
    throw BracketError("f has the same sign at both ends of [" + std::to_string(b.lo) + ", " +
                       std::to_string(b.hi) + "] for '" + problem.id + "'");
  }
  return {slo, shi};
}

IterationRecord multisect_step(const Interval& interval, const Function& f, int sections) {
  require_sections(sections);
  const Sign lo_sign = sign_of(f(interval.lo));
  const Sign hi_sign = sign_of(f(interval.hi));
  if (lo_sign == Sign::Zero || hi_sign == Sign::Zero || lo_sign == hi_sign) {
    throw NoSignChangeError("interval endpoints do not straddle a sign change");
  }
  return multisect_step(interval, f, sections, lo_sign, hi_sign);
}

IterationRecord multisect_step(const Interval& interval, const Function& f, int sections,
                               Sign lo_sign, Sign hi_sign) {
  require_sections(sections);
  if (lo_sign == Sign::Zero || hi_sign == Sign::Zero) {
    throw DomainError("endpoint signs must be nonzero");
  }
  std::vector<NodeValue> nodes;
  const StepOutcome out = step_core(interval, f, sections, lo_sign, hi_sign, 0.0, nodes);
  return make_record(1, interval, nodes, out);
}

int predicted_max_iterations(double width, double mu, int sections) {
  if (!(mu > 0.0)) {
    throw DomainError("mu must be positive");
  }
  require_sections(sections);
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("width must be positive and finite");
  }
  if (width <= mu) {
    return 0;
  }
  const double n = static_cast<double>(sections);
  // The logarithmic estimate can land one off when width/mu is an exact
  // power of N; settle it against the defining inequality.
  int m = static_cast<int>(std::ceil((std::log(width) - std::log(mu)) / std::log(n)));
  const auto reached = [&](int k) { return width / std::pow(n, k) <= mu; };
  while (m > 0 && reached(m - 1)) --m;
  while (!reached(m)) ++m;
  return m;
}

int predicted_max_iterations(const Interval& interval, double mu, int sections) {
  return predicted_max_iterations(interval.width(), mu, sections);
}

SolveResult solve(const Problem& problem, const SolveOptions& options) {
  require_sections(options.sections);
  if (!(options.width_tolerance > 0.0)) {
    throw DomainError("width_tolerance must be positive");
  }
  if (!(options.residual_tolerance >= 0.0)) {
    throw DomainError("residual_tolerance must be non-negative");
  }
  const int n = options.sections;
  const auto [lo_sign, hi_sign] = validate_bracket(problem);

  SolveResult result;
  result.function_evaluations = 2;
  result.final_interval = problem.bracket;
  if (lo_sign == Sign::Zero || hi_sign == Sign::Zero) {
    result.root = lo_sign == Sign::Zero ? problem.bracket.lo : problem.bracket.hi;
    result.residual = 0.0;
    result.termination = Termination::ExactZero;
    return result;
  }

  // Past the precision floor the interval stops shrinking; the iteration
  // budget still bounds the loop so its cost stays predictable.
  const int budget = predicted_max_iterations(problem.bracket, options.width_tolerance, n);
  const int max_iterations = options.max_iterations.value_or(budget + 2);

  Interval interval = problem.bracket;
  std::vector<NodeValue> nodes;
  nodes.reserve(static_cast<std::size_t>(n - 1));

  for (;;) {
    if (interval.width() <= options.width_tolerance || result.iterations >= budget) {
      result.termination = Termination::WidthReached;
      break;
    }
    if (result.iterations >= max_iterations) {
      result.termination = Termination::MaxIterations;
      break;
    }
    const StepOutcome out =
        step_core(interval, problem.f, n, lo_sign, hi_sign, options.residual_tolerance, nodes);
    ++result.iterations;
    result.function_evaluations += n - 1;
    if (options.record_trace) {
      result.trace.push_back(make_record(result.iterations, interval, nodes, out));
    }
    if (out.exact_root) {
      result.root = *out.exact_root;
      result.residual = 0.0;
      result.termination = Termination::ExactZero;
      result.final_interval = interval;
      return result;
    }
    if (out.residual_node) {
      result.root = out.residual_node->x;
      result.residual = out.residual_node->fx;
      result.termination = Termination::ResidualReached;
      result.final_interval = interval;
      return result;
    }
    interval = out.chosen;
  }

  result.final_interval = interval;
  result.root = interval.midpoint();
  result.residual = problem.f(result.root);
  return result;
}

}  // namespace msect
