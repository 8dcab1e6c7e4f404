#pragma once
// CSV output with pinned formatting: '.' decimal separator (the global C locale is
// never changed), 17 significant digits for doubles (round-trip superset), '\n'
// line endings.  Identical inputs must produce identical bytes.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace tauberlab {

inline std::string csv_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

inline std::string csv_int(long long x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", x);
  return std::string(buf);
}

struct CsvWriter {
  std::ofstream out;

  explicit CsvWriter(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw std::runtime_error("csv: cannot open " + path);
  }

  void raw_line(const std::string& line) {
    out << line << '\n';
  }

  template <class... Ts>
  void row(const Ts&... cells) {
    std::string line;
    bool first = true;
    (append_cell(line, first, cells), ...);
    raw_line(line);
  }

 private:
  static void append_sep(std::string& line, bool& first) {
    if (!first) line += ',';
    first = false;
  }
  static void append_cell(std::string& line, bool& first, double v) {
    append_sep(line, first);
    line += csv_double(v);
  }
  static void append_cell(std::string& line, bool& first, long long v) {
    append_sep(line, first);
    line += csv_int(v);
  }
  static void append_cell(std::string& line, bool& first, unsigned long long v) {
    append_sep(line, first);
    line += std::to_string(v);
  }
  static void append_cell(std::string& line, bool& first, int v) {
    append_cell(line, first, static_cast<long long>(v));
  }
  static void append_cell(std::string& line, bool& first, std::size_t v) {
    append_cell(line, first, static_cast<unsigned long long>(v));
  }
  static void append_cell(std::string& line, bool& first, const std::string& v) {
    append_sep(line, first);
    line += v;
  }
  static void append_cell(std::string& line, bool& first, const char* v) {
    append_sep(line, first);
    line += v;
  }
};

}  // namespace tauberlab
