#pragma once

#include <numbers>

namespace qscatter {

// Internal units everywhere: angular rates in rad/us, time in us.
// CLI-facing units: ordinary frequencies f = omega/2pi in MHz, time in ns.

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_to_angular(double f_mhz) { return kTwoPi * f_mhz; }
constexpr double angular_to_mhz(double omega) { return omega / kTwoPi; }

constexpr double ns_to_us(double t_ns) { return t_ns * 1e-3; }
constexpr double us_to_ns(double t_us) { return t_us * 1e3; }

}  // namespace qscatter
