#pragma once

namespace thetanull {

inline constexpr const char* kToolName = "thetanull";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace thetanull
