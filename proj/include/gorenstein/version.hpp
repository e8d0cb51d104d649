#pragma once

namespace gorenstein {
inline constexpr const char* kVersion = "0.1.0";
}
