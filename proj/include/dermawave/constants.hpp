#pragma once

namespace dermawave {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

// Band in which the relaxation parameters are stated to hold.
inline constexpr double kValidBandLowHz = 1e11;
inline constexpr double kValidBandHighHz = 1e12;

// Band accepted at all; outside of it evaluation is refused.
inline constexpr double kAcceptedBandLowHz = 1e10;
inline constexpr double kAcceptedBandHighHz = 1e13;

inline constexpr double kMicron = 1e-6;
inline constexpr double kPicosecond = 1e-12;
inline constexpr double kCubicMillimetre = 1e-9;  // m^3
inline constexpr double kSquareMillimetre = 1e-6; // m^2

}  // namespace dermawave
