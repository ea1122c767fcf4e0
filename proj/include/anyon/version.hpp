#pragma once

namespace anyon {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace anyon
