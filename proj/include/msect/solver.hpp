#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace msect {

using Function = std::function<double(double)>;

/// Default absolute width tolerance, 2^-52.
inline constexpr double kMachinePrecision = 0x1p-52;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double midpoint() const noexcept { return lo + (hi - lo) / 2; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Checked constructor: both endpoints finite and lo < hi, else DomainError.
Interval make_interval(double lo, double hi);

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

/// Sign of a finite value or infinity. Throws EvaluationError on NaN.
Sign sign_of(double value);

struct Problem {
  std::string id;
  Function f;
  Interval bracket;
  std::optional<double> reference_root;
};

struct SolveOptions {
  int sections = 2;
  double width_tolerance = kMachinePrecision;
  /// 0 means only exact zeros end the iteration early.
  double residual_tolerance = 0.0;
  /// Defaults to predicted_max_iterations + 2.
  std::optional<int> max_iterations;
  /// Benchmarks turn this off so the trace does not enter the timing.
  bool record_trace = true;
};

struct NodeValue {
  double x = 0.0;
  double fx = 0.0;
};

/// One pass of the N-section iteration.
///
/// `evaluated_nodes` always holds the N-1 interior nodes, left to right.
/// `chosen_subinterval` is the leftmost subinterval across which f changes
/// sign. When a node is an exact zero, `exact_root` holds it and the
/// chosen subinterval collapses onto that node. Once the interval has
/// reached the spacing of adjacent doubles the nodes round onto its
/// endpoints and the chosen subinterval can equal `interval_before`.
struct IterationRecord {
  int index = 0;
  Interval interval_before;
  std::vector<NodeValue> evaluated_nodes;
  Interval chosen_subinterval;
  std::optional<double> exact_root;
  /// First node with |f| <= residual_tolerance, when that tolerance is positive.
  std::optional<double> residual_root;

  /// Best estimate after this iteration: the exact or residual root if one
  /// was flagged, else the midpoint of the chosen subinterval.
  double estimate() const noexcept;
};

enum class Termination { ExactZero, WidthReached, ResidualReached, MaxIterations };

const char* to_string(Termination t) noexcept;

struct SolveResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  /// (N-1) per iteration plus the two bracket endpoint checks. The residual
  /// evaluation at the reported root is not counted.
  std::int64_t function_evaluations = 0;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::WidthReached;
  Interval final_interval;
};

/// Signs of f at the bracket endpoints.
///
/// Succeeds when the signs are strictly opposite or one of them is an
/// exact zero. Throws BracketError otherwise and EvaluationError on NaN.
std::pair<Sign, Sign> validate_bracket(const Problem& problem);

/// Evaluates f at both endpoints to establish the sign change, then steps.
/// Throws NoSignChangeError when the endpoint signs agree.
IterationRecord multisect_step(const Interval& interval, const Function& f, int sections);

/// Step with endpoint signs already known. The signs must be nonzero.
IterationRecord multisect_step(const Interval& interval, const Function& f, int sections,
                               Sign lo_sign, Sign hi_sign);

SolveResult solve(const Problem& problem, const SolveOptions& options = {});

/// Smallest M with width / N^M <= mu.
int predicted_max_iterations(double width, double mu, int sections);
int predicted_max_iterations(const Interval& interval, double mu, int sections);

/// The six nonlinear test problems in a fixed order, each with a reference root.
std::vector<Problem> corpus();

}  // namespace msect
