#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msect/bench.hpp"

namespace msect {

inline constexpr std::string_view kSweepCsvHeader =
    "N,mean_loop_seconds,stddev_loop_seconds,loop_count";

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

void write_sweep_csv(std::ostream& out, std::span<const TimingSample> samples);

/// Parses a sweep CSV written by write_sweep_csv. Throws Error on a wrong
/// header or a malformed row.
std::vector<TimingSample> read_sweep_csv(std::istream& in);

}  // namespace msect
