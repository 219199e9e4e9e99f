#pragma once

#include <cstdio>
#include <string>

namespace alp {

/// Round-trip-safe text for a double (%.17g).
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Six significant digits, for labels and messages.
inline std::string format_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace alp
