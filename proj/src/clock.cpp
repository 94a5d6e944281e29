#include "msect/clock.hpp"

#include <algorithm>
#include <limits>

namespace msect {

SteadyClock::SteadyClock() : origin_(std::chrono::steady_clock::now()) {
  double best = std::numeric_limits<double>::infinity();
  for (int probe = 0; probe < 16; ++probe) {
    const double start = now();
    double next = start;
    while (next == start) {
      next = now();
    }
    best = std::min(best, next - start);
  }
  resolution_ = best;
}

double SteadyClock::now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - origin_).count();
}

}  // namespace msect
