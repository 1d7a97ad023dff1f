#pragma once

#include <string_view>

namespace telag {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kToolName = "telag";

}  // namespace telag
