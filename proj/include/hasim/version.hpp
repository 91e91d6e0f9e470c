#pragma once

namespace hasim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace hasim
