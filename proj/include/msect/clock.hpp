#pragma once

#include <chrono>
#include <cstdint>

#include "msect/model.hpp"

namespace msect {

/// Time source for the benchmark harness.
///
/// The harness reads `now()` around whole solves and reports the number of
/// loops each solve executed through `account_loops()` before the closing
/// read. Wall clocks ignore that call; a synthetic clock advances on it.
class Clock {
public:
  virtual ~Clock() = default;

  virtual double now() = 0;
  /// Smallest observable tick, seconds.
  virtual double resolution() const = 0;
  virtual void account_loops(int /*sections*/, std::int64_t /*loops*/) {}
};

/// std::chrono::steady_clock, with its tick measured empirically at construction.
class SteadyClock final : public Clock {
public:
  SteadyClock();

  /// Seconds since construction.
  double now() override;
  double resolution() const override { return resolution_; }

private:
  std::chrono::steady_clock::time_point origin_;
  double resolution_;
};

/// Deterministic clock in which one loop at N sections costs exactly m*N + c.
class SyntheticClock final : public Clock {
public:
  explicit SyntheticClock(const CostModel& per_loop) : cost_(per_loop) {}

  double now() override { return elapsed_; }
  double resolution() const override { return 0.0; }
  void account_loops(int sections, std::int64_t loops) override {
    elapsed_ += static_cast<double>(loops) * cost_.loop_time(sections);
  }

private:
  CostModel cost_;
  double elapsed_ = 0.0;
};

}  // namespace msect
