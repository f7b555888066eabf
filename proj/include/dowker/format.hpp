#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace dowker {

// Shortest decimal string that parses back to exactly the same double.
inline std::string fmt_shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// 17 significant digits: round-trip exact. Used for JSON output.
inline std::string fmt_sig17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// 6 significant digits, for human-facing CSV columns.
inline std::string fmt_sig6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace dowker
