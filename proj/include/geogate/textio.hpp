#pragma once

// Locale-free number formatting shared by the CSV writer and the
// schedule describe() dump.

#include <charconv>
#include <string>
#include <system_error>

namespace geogate {

// shortest decimal form with 9 significant digits
inline std::string format_sig9(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

}  // namespace geogate
