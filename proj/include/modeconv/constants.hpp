#pragma once

namespace modeconv {

// CODATA 2018 values, SI units.
inline constexpr double pi        = 3.14159265358979323846;
inline constexpr double two_pi    = 2.0 * pi;
inline constexpr double hbar      = 1.054571817e-34;   // J s
inline constexpr double k_boltz   = 1.380649e-23;      // J/K
inline constexpr double c_light   = 2.99792458e8;      // m/s
inline constexpr double epsilon0  = 8.8541878128e-12;  // F/m

// All internal frequencies and rates are angular (rad/s).  Config files and
// CSV outputs use ordinary frequency in Hz; these two helpers are the single
// conversion boundary.
inline constexpr double from_hz(double f) { return two_pi * f; }
inline constexpr double to_hz(double omega) { return omega / two_pi; }

} // namespace modeconv
