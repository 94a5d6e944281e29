#include "msect/convergence.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

#include "msect/errors.hpp"

namespace msect {

BoundSequence::BoundSequence(double initial_width_, int base_)
    : initial_width(initial_width_), base(base_) {
  if (!(initial_width > 0.0) || !std::isfinite(initial_width)) {
    throw DomainError("initial width must be positive and finite");
  }
  if (base < 2) {
    throw DomainError("bound base N must be >= 2");
  }
}

double bound_at(const BoundSequence& seq, int i) {
  if (i < 0) throw DomainError("bound index must be >= 0");
  const auto n = static_cast<double>(seq.base);
  double b = seq.initial_width;
  for (int k = 0; k < i && b != 0.0; ++k) {
    b /= n;
  }
  return b;
}

int first_index_below(const BoundSequence& seq, double eps) {
  if (!(eps > 0.0) || eps > seq.initial_width) {
    throw DomainError("eps must lie in (0, initial_width]");
  }
  const auto n = static_cast<double>(seq.base);
  double b = seq.initial_width;
  int i = 0;
  while (b > eps) {
    b /= n;
    ++i;
  }
  return i;
}

int underflow_exponent(double width, UnderflowMode mode) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw DomainError("width must be positive and finite");
  }
  // volatile keeps the halving at run time, in the host's arithmetic.
  volatile double b = width;
  int z = 0;
  while (b != 0.0) {
    b = b / 2.0;
    if (mode == UnderflowMode::FlushToZero && std::fpclassify(b) == FP_SUBNORMAL) {
      b = 0.0;
    }
    ++z;
  }
  return z;
}

bool host_supports_subnormals() {
  volatile double tiny = DBL_MIN;
  return tiny / 2.0 != 0.0;
}

std::vector<BoundCheck> BoundReport::violations() const {
  std::vector<BoundCheck> out;
  for (const BoundCheck& c : checks) {
    if (!c.holds()) out.push_back(c);
  }
  return out;
}

bool BoundReport::ok() const {
  for (const BoundCheck& c : checks) {
    if (!c.holds()) return false;
  }
  return true;
}

BoundReport check_error_bounds(const Problem& problem, int sections) {
  if (!problem.reference_root) {
    throw DomainError("'" + problem.id + "' has no reference root to check against");
  }
  const double root = *problem.reference_root;
  SolveOptions options;
  options.sections = sections;
  const SolveResult result = solve(problem, options);

  BoundReport report;
  report.problem_id = problem.id;
  report.sections = sections;
  const auto n = static_cast<double>(sections);
  double bound = problem.bracket.width();
  for (const IterationRecord& rec : result.trace) {
    bound /= n;
    BoundCheck check;
    check.iteration = rec.index;
    check.estimate = rec.estimate();
    check.error = std::abs(check.estimate - root);
    check.bound = bound;
    report.checks.push_back(check);
  }
  return report;
}

BoundReport verify_error_bounds(const Problem& problem, int sections) {
  BoundReport report = check_error_bounds(problem, sections);
  for (const BoundCheck& c : report.checks) {
    if (!c.holds()) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "error bound violated for '" << problem.id << "' at N = " << sections
          << ", iteration " << c.iteration << ": |p_i - p| = " << c.error << " > B_i = " << c.bound;
      throw BoundViolation(c.iteration, msg.str());
    }
  }
  return report;
}

}  // namespace msect
