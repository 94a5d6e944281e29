#pragma once

#include <iosfwd>

namespace msect::cli {

/// Process exit codes. Stable across releases.
enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kBracket = 2,
  kArguments = 3,
  kFit = 4,
  kBoundViolation = 5,
};

/// Entry point shared by the `msect` executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msect::cli
