#pragma once

namespace wnls {
inline constexpr const char* kVersion = "0.1.0";
}
