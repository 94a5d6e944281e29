#include "msect/lambert.hpp"

#include <cmath>
#include <string>

#include "msect/errors.hpp"

namespace msect {

namespace {
constexpr int kMaxIterations = 50;
constexpr double kStepTolerance = 1e-15;
}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("lambert_w0 is defined here for x >= 0 only");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  // ln(1 + x) overshoots W by about ln ln x; near DBL_MAX that is enough to
  // overflow w * e^w, so the two-term asymptotic guess takes over there.
  double w;
  if (x < 1e300) {
    w = std::log1p(x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int k = 0; k < kMaxIterations; ++k) {
    const double ew = std::exp(w);
    const double residual = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = residual / (ew * wp1 - (w + 2.0) * residual / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= kStepTolerance * (1.0 + std::abs(w))) {
      return w;
    }
  }
  throw ConvergenceError("lambert_w0 did not converge for x = " + std::to_string(x));
}

double check_w_identity(double x) {
  if (!(x > 0.0)) {
    throw DomainError("identity check requires x > 0");
  }
  const double w = lambert_w0(x);
  const double rhs = x / w;
  return std::abs(std::exp(w) - rhs) / rhs;
}

}  // namespace msect
