#pragma once

#include <numbers>

namespace levito::constants {

// CODATA 2018 exact / recommended values, SI units.
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;       // m/s
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kHbar = 1.054571817e-34;             // J s
inline constexpr double kBoltzmann = 1.380649e-23;           // J/K

// Mean molecular mass of dry air.
inline constexpr double kAirMoleculeMass = 4.81e-26;  // kg

/// Vacuum quadrature variance. Quadratures are x = (a + a^dag)/sqrt(2).
inline constexpr double kVacuumVariance = 0.5;

}  // namespace levito::constants
