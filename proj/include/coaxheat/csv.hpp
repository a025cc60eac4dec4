#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

namespace coaxheat {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Minimal CSV writer: fixed column order, round-trip numeric formatting.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_double(values[i]);
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace coaxheat
