#pragma once

namespace lexbridge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lexbridge
