#include "msect/cli/host.hpp"

#include <sys/utsname.h>

#include <chrono>
#include <ctime>
#include <fstream>

namespace msect::cli {

std::string host_descriptor() {
  std::string desc;
  utsname info{};
  if (uname(&info) == 0) {
    desc = std::string(info.sysname) + " " + info.release + " " + info.machine;
  } else {
    desc = "unknown-os";
  }
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        desc += ";" + line.substr(colon + 1);
      }
      break;
    }
  }
  return desc;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace msect::cli
