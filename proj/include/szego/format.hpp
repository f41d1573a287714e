#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace szego {

/// Round-trippable decimal form of a double (17 significant digits, '.'
/// separator regardless of locale).
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// As format_double, but non-finite values become JSON null.
inline std::string format_json_double(double v) {
  return std::isfinite(v) ? format_double(v) : std::string("null");
}

}  // namespace szego
