#pragma once

#include <numbers>

namespace asymcav {

inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPpm = 1e-6;
inline constexpr double kDefaultWavelength = 1064e-9;      // m

}  // namespace asymcav
