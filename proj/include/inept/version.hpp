#pragma once

namespace inept {
inline constexpr const char* kVersion = "0.1.0";
}
