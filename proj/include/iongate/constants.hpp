#pragma once

#include <numbers>

namespace iongate {

// CODATA 2018. All internal math is SI with angular frequencies in rad/s;
// config files carry Hz / T/m / seconds and are converted once at load.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr const char* version_string = "iongate 0.1.0";

}  // namespace iongate
