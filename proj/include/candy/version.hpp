#pragma once

namespace candy {
inline constexpr const char* kVersion = "0.1.0";
}
