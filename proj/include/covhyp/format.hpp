// Shared numeric text formatting. All user-facing numbers (CLI, CSV, reports)
// go through fmt17 so golden files are bit-stable on IEEE-754 doubles.
#pragma once

#include <cstdio>
#include <string>

namespace covhyp {

inline std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace covhyp
