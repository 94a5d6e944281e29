#include <cmath>
#include <numbers>

#include "msect/solver.hpp"

namespace msect {

std::vector<Problem> corpus() {
  using std::numbers::pi;
  return {
      {"sin(x)-cos(x)", [](double x) { return std::sin(x) - std::cos(x); }, {0.0, pi / 2}, pi / 4},
      // e^x = 2 + x; the root is -2 - W_{-1}(-e^{-2}), evaluated offline to 40 digits.
      {"exp(x)-2-x", [](double x) { return std::exp(x) - 2.0 - x; }, {1.0, 4.0},
       1.1461932206205825852},
      {"x^2-8", [](double x) { return x * x - 8.0; }, {-5.0, -2.0}, -2.0 * std::sqrt(2.0)},
      {"1/(10-x)-1/4", [](double x) { return 1.0 / (10.0 - x) - 0.25; }, {-2.0, 7.0}, 6.0},
      {"exp(-x)*sin(x)", [](double x) { return std::exp(-x) * std::sin(x); }, {-8.0, -5.0},
       -2.0 * pi},
      // ln(x^2) = 7 on the positive branch: x = e^{7/2}.
      {"log(x^2)-7", [](double x) { return std::log(x * x) - 7.0; }, {20.0, 40.0},
       33.115451958692313751},
  };
}

}  // namespace msect
