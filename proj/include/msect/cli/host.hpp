#pragma once

#include <string>

namespace msect::cli {

/// "<os> <release> <arch>; <cpu model>" as far as the host reveals it.
std::string host_descriptor();

/// Current UTC time, ISO 8601 to the second.
std::string utc_timestamp();

}  // namespace msect::cli
