#pragma once

namespace hardrods {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hardrods
