#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace gravswap {

/// Full-precision decimal rendering (17 significant digits) used in every
/// text output so that values round-trip exactly.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace gravswap
