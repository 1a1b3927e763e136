#pragma once

namespace rilsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rilsim
