#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace uavisac::strfmt {

// Shortest decimal form that round-trips the exact double. Locale-free, so
// artifact files are byte-identical regardless of the host environment.
inline std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Fixed-point with a given number of decimals (snprintf in the "C" locale;
// the project never calls setlocale, so '.' is guaranteed).
inline std::string fixed(double v, int decimals) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return std::string(buf);
}

// %g-style with a given number of significant digits.
inline std::string general(double v, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
  return std::string(buf);
}

}  // namespace uavisac::strfmt
