#pragma once

#include <numbers>

namespace cohmap {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angular frequencies are carried as rad/ns internally; every external
// interface speaks linear MHz. All conversions go through these two
// functions so the 2*pi and the ns/us scaling live in exactly one place.
// 1 MHz = 1e-3 cycles/ns.
constexpr double mhz_to_rad_ns(double f_mhz) { return kTwoPi * 1e-3 * f_mhz; }
constexpr double rad_ns_to_mhz(double w_rad_ns) { return w_rad_ns / (kTwoPi * 1e-3); }

constexpr double us_to_ns(double t_us) { return 1e3 * t_us; }
constexpr double ms_to_ns(double t_ms) { return 1e6 * t_ms; }

}  // namespace cohmap
