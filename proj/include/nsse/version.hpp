#pragma once

namespace nsse {
inline constexpr const char* kVersion = "1.0.0";
}
