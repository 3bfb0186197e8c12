#pragma once

#include <cstdio>
#include <string>

namespace fusesim {

// Fixed-point rendering used for every CSV column, so reruns are byte-stable.
inline std::string FormatFixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  std::string out = buffer;
  if (out == "-0" || out.rfind("-0.", 0) == 0) {
    if (out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  }
  return out;
}

inline std::string FormatMillis(double ms) { return FormatFixed(ms, 3); }

inline std::string FormatUsd(double usd) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6e", usd);
  return buffer;
}

}  // namespace fusesim
