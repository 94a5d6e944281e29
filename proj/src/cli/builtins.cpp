#include "msect/cli/builtins.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace msect::cli {

namespace {

using Entry = std::pair<std::string_view, double (*)(double)>;

constexpr std::array<Entry, 7> kBuiltins{{
    {"sin-cos", [](double x) { return std::sin(x) - std::cos(x); }},
    {"exp-2-x", [](double x) { return std::exp(x) - 2.0 - x; }},
    {"square-8", [](double x) { return x * x - 8.0; }},
    {"reciprocal", [](double x) { return 1.0 / (10.0 - x) - 0.25; }},
    {"damped-sine", [](double x) { return std::exp(-x) * std::sin(x); }},
    {"log-square-7", [](double x) { return std::log(x * x) - 7.0; }},
    {"identity", [](double x) { return x; }},
}};

}  // namespace

std::optional<Function> builtin_function(std::string_view name) {
  for (const auto& [key, fn] : kBuiltins) {
    if (key == name) return Function(fn);
  }
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& entry : kBuiltins) names.emplace_back(entry.first);
  return names;
}

}  // namespace msect::cli
