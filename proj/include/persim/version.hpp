#pragma once

namespace persim {

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace persim
