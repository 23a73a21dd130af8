#pragma once

namespace mccp {

inline constexpr const char* kToolName = "coupon-embed";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mccp
