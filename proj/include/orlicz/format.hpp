#pragma once

#include <cstdio>
#include <span>
#include <string>

namespace orlicz {

// All numeric text output funnels through this: %.17g round-trips doubles
// exactly, so serialized tables are byte-stable across runs.
inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_row(std::span<const double> vals) {
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ',';
    out += g17(vals[i]);
  }
  return out;
}

} // namespace orlicz
