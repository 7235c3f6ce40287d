#pragma once

namespace secluded {

inline constexpr const char* kToolName = "seclude";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace secluded
