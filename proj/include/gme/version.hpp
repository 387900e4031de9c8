#pragma once

namespace gme {

inline constexpr const char* kVersion = "0.1.0";

} // namespace gme
