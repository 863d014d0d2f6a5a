#pragma once

namespace gdicke {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gdicke
