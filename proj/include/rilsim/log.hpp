#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace rilsim {

// Diagnostic logging is off unless the RILSIM_LOG environment variable is set
// to a non-empty value other than "0".
inline bool log_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("RILSIM_LOG");
    return v != nullptr && v[0] != '\0' && !(v[0] == '0' && v[1] == '\0');
  }();
  return enabled;
}

inline void log_line(std::string_view message) {
  if (log_enabled()) std::cerr << "[rilsim] " << message << '\n';
}

}  // namespace rilsim
