#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

#include "../oracles.hpp"
#include "msect/convergence.hpp"
#include "msect/errors.hpp"

using namespace msect;

TEST_SUITE("convergence") {

TEST_CASE("bound_at examples") {
  CHECK(bound_at({1.0, 2}, 0) == 1.0);
  CHECK(bound_at({1.0, 2}, 10) == 0.0009765625);
  CHECK(bound_at({std::numbers::pi / 2, 2}, 53) <= 0x1p-52);
  CHECK(bound_at({1.0, 2}, 5000) == 0.0);
  CHECK_THROWS_AS(bound_at({1.0, 2}, -1), DomainError);
  CHECK_THROWS_AS(BoundSequence(1.0, 1), DomainError);
  CHECK_THROWS_AS(BoundSequence(0.0, 2), DomainError);
}

TEST_CASE("first_index_below examples") {
  CHECK(first_index_below({1.0, 2}, 1.0) == 0);
  CHECK(first_index_below({1.0, 2}, 0x1p-52) == 52);
  // ceil(ln(3e10)/ln 6) = ceil(13.47).
  CHECK(first_index_below({3.0, 6}, 1e-10) == 14);
  CHECK_THROWS_AS(first_index_below({1.0, 2}, 0.0), DomainError);
  CHECK_THROWS_AS(first_index_below({1.0, 2}, 1.5), DomainError);
}

TEST_CASE("bound sequence shrinks at least by half per step") {
  for (int n : {2, 3, 10, 81}) {
    const BoundSequence seq(std::numbers::pi, n);
    double previous = bound_at(seq, 0);
    for (int i = 1; previous != 0.0; ++i) {
      const double b = bound_at(seq, i);
      const double ulp = std::nextafter(previous / 2, INFINITY) - previous / 2;
      CHECK(b <= previous / 2 + ulp);
      previous = b;
    }
  }
}

TEST_CASE("first_index_below agrees with predicted_max_iterations at eps = mu") {
  for (const Problem& p : corpus()) {
    for (int n : {2, 3, 10, 81, 250}) {
      CAPTURE(p.id);
      CAPTURE(n);
      CHECK(first_index_below({p.bracket.width(), n}, kMachinePrecision) ==
            predicted_max_iterations(p.bracket, kMachinePrecision, n));
    }
  }
}

TEST_CASE("underflow_exponent examples") {
  CHECK(underflow_exponent(0x1p-1074) == 1);
  CHECK(oracle::halvings_to_zero(1.0) == 1075);
  CHECK(underflow_exponent(1.0) == 1075);
  // 2^-1022 is the smallest normal; one more halving is subnormal.
  CHECK(underflow_exponent(1.0, UnderflowMode::FlushToZero) == 1023);
  CHECK(underflow_exponent(0x1p-1074, UnderflowMode::FlushToZero) == 1);
  CHECK(host_supports_subnormals());
  CHECK(kReportedUnderflowExponent == 1024);
  CHECK_THROWS_AS(underflow_exponent(0.0), DomainError);
  CHECK_THROWS_AS(underflow_exponent(INFINITY), DomainError);
}

TEST_CASE("underflow_exponent shifts with exact powers of two") {
  std::mt19937_64 rng(1024);
  std::uniform_real_distribution<double> mantissa(1.0, 2.0);
  std::uniform_int_distribution<int> shift(-1000, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    const double w = mantissa(rng);
    const int k = shift(rng);
    CAPTURE(w);
    CAPTURE(k);
    CHECK(underflow_exponent(std::ldexp(w, k)) == underflow_exponent(w) + k);
    CHECK(underflow_exponent(std::ldexp(w, k)) == oracle::halvings_to_zero(std::ldexp(w, k)));
  }
}

TEST_CASE("verify_error_bounds on sin - cos with N = 81") {
  const BoundReport report = verify_error_bounds(corpus()[0], 81);
  CHECK(report.ok());
  CHECK(report.checks.size() == 9);
  double bound = corpus()[0].bracket.width();
  for (const BoundCheck& c : report.checks) {
    bound /= 81;
    CHECK(c.bound == bound);
    CHECK(c.margin() >= 0.0);
  }
}

TEST_CASE("verify_error_bounds on x with N = 2") {
  const Problem p{"x", [](double x) { return x; }, {-1.0, 1.0}, 0.0};
  const BoundReport report = verify_error_bounds(p, 2);
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].margin() == report.checks[0].bound);
}

TEST_CASE("x^2 - 8 with N = 2 meets the bound until B_i drops below the double spacing") {
  const Problem p = corpus()[2];
  const double root = *p.reference_root;
  const double spacing = std::nextafter(std::abs(root), INFINITY) - std::abs(root);
  const BoundReport report = check_error_bounds(p, 2);
  CHECK(report.checks.size() == 54);
  for (const BoundCheck& c : report.checks) {
    CAPTURE(c.iteration);
    if (c.bound >= spacing) CHECK(c.holds());
  }
  // Iterations 53 and 54 have B_i < 4.4e-16, the spacing of doubles near
  // -2 sqrt 2, so no binary64 estimate can satisfy them.
  CHECK_THROWS_AS(verify_error_bounds(p, 2), BoundViolation);
  try {
    verify_error_bounds(p, 2);
  } catch (const BoundViolation& e) {
    CHECK(e.iteration() == 53);
  }
}

TEST_CASE("error bound never checks the error ratio") {
  // The bound alone is checked; the ratio |p_{i+1} - p| / |p_i - p| is
  // free to be non-monotone, as it is for sin - cos with N = 2.
  const BoundReport report = check_error_bounds(corpus()[0], 2);
  CHECK(report.ok());
  bool ratio_increases_somewhere = false;
  for (std::size_t i = 2; i < report.checks.size(); ++i) {
    const double e0 = report.checks[i - 2].error;
    const double e1 = report.checks[i - 1].error;
    const double e2 = report.checks[i].error;
    if (e0 > 0 && e1 > 0 && e2 / e1 > e1 / e0) ratio_increases_somewhere = true;
  }
  CHECK(ratio_increases_somewhere);
}

TEST_CASE("problems without a reference root cannot be checked") {
  const Problem p{"x", [](double x) { return x; }, {-1.0, 2.0}, std::nullopt};
  CHECK_THROWS_AS(check_error_bounds(p, 2), DomainError);
  CHECK(kCounterexampleRoot == 0.564468413605939);
}

}  // TEST_SUITE
