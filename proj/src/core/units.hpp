// units.hpp — unit conventions shared by every module.
//
// Canonical internal unit for rate formulas: angular rad/us (numerically
// equal to us^-1 for rates). I/O and spectra: cyclic GHz; small tensors and
// rate tables exported in cyclic MHz ("2pi x MHz" in angular language).

#pragma once

#include <cmath>

namespace bhc::units {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// cyclic GHz -> rad/us (exactly x 2*pi*1e3)
inline constexpr double ghz_to_radus(double f_ghz) noexcept { return f_ghz * kTwoPi * 1e3; }
inline constexpr double radus_to_ghz(double w_radus) noexcept { return w_radus / (kTwoPi * 1e3); }

// cyclic MHz -> rad/us
inline constexpr double mhz_to_radus(double f_mhz) noexcept { return f_mhz * kTwoPi; }
inline constexpr double radus_to_mhz(double w_radus) noexcept { return w_radus / kTwoPi; }

inline constexpr double ghz_to_mhz(double f_ghz) noexcept { return f_ghz * 1e3; }
inline constexpr double mhz_to_ghz(double f_mhz) noexcept { return f_mhz * 1e-3; }

} // namespace bhc::units
