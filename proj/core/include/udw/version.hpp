#pragma once

namespace udw {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace udw
