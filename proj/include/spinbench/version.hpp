#pragma once

namespace spinbench {
inline constexpr const char* kVersion = "1.0.0";
}
