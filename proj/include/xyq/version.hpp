#pragma once

namespace xyq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xyq
