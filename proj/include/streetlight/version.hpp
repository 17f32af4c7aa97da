#pragma once

namespace streetlight {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace streetlight
