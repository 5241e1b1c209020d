#pragma once

// Locale-independent CSV output: '.' decimal separator, shortest
// round-trip doubles, line-feed endings. Reruns with identical inputs
// produce byte-identical files.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace scuq::csv {

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path);
  }

  void header(const std::vector<std::string>& cols) { raw_row(cols); }

  template <class... Ts>
  void row(const Ts&... fields) {
    std::string line;
    bool first = true;
    (append(line, first, fields), ...);
    line.push_back('\n');
    out_ << line;
  }

 private:
  void raw_row(const std::vector<std::string>& cols) {
    std::string line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) line.push_back(',');
      line += cols[i];
    }
    line.push_back('\n');
    out_ << line;
  }
  static void append(std::string& line, bool& first, double v) {
    if (!first) line.push_back(',');
    first = false;
    line += format_double(v);
  }
  static void append(std::string& line, bool& first, const std::string& v) {
    if (!first) line.push_back(',');
    first = false;
    line += v;
  }
  static void append(std::string& line, bool& first, const char* v) {
    append(line, first, std::string(v));
  }
  static void append(std::string& line, bool& first, std::size_t v) {
    if (!first) line.push_back(',');
    first = false;
    line += std::to_string(v);
  }
  static void append(std::string& line, bool& first, int v) {
    if (!first) line.push_back(',');
    first = false;
    line += std::to_string(v);
  }

  std::ofstream out_;
};

}  // namespace scuq::csv
