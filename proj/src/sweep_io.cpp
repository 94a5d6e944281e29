#include "msect/sweep_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

#include "msect/errors.hpp"

namespace msect {

namespace {

template <typename T>
T parse_field(std::string_view field, int line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error("sweep CSV line " + std::to_string(line) + ": cannot parse '" +
                std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

void write_sweep_csv(std::ostream& out, std::span<const TimingSample> samples) {
  out << kSweepCsvHeader << '\n';
  for (const TimingSample& s : samples) {
    out << s.sections << ',' << format_double(s.mean_loop_seconds) << ','
        << format_double(s.stddev_loop_seconds) << ',' << s.loop_count << '\n';
  }
}

std::vector<TimingSample> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw Error("sweep CSV must start with the header '" + std::string(kSweepCsvHeader) + "'");
  }
  std::vector<TimingSample> samples;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<std::string_view, 4> fields;
    std::string_view rest = line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto comma = rest.find(',');
      if ((i + 1 < fields.size()) == (comma == std::string_view::npos)) {
        throw Error("sweep CSV line " + std::to_string(line_no) + ": expected 4 fields");
      }
      fields[i] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    TimingSample s;
    s.sections = parse_field<int>(fields[0], line_no);
    s.mean_loop_seconds = parse_field<double>(fields[1], line_no);
    s.stddev_loop_seconds = parse_field<double>(fields[2], line_no);
    s.loop_count = parse_field<std::int64_t>(fields[3], line_no);
    samples.push_back(s);
  }
  return samples;
}

}  // namespace msect
