#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msect/solver.hpp"

namespace msect::cli {

/// Compiled-in target functions selectable by name on the command line.
std::optional<Function> builtin_function(std::string_view name);
std::vector<std::string> builtin_names();

}  // namespace msect::cli
