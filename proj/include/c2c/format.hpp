#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace c2c {

// Shortest decimal text that round-trips to the same double.
inline std::string format_real(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

// Fixed number of significant digits, e.g. for cache files.
inline std::string format_significant(double value, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  return std::string(buf, end);
}

// Rounds to `places` decimals for report output.
inline double round_to(double value, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(value * scale) / scale;
}

}  // namespace c2c
