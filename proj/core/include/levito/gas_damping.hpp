#pragma once

#include "levito/constants.hpp"
#include "levito/ellipsoid.hpp"

namespace levito {

/// Residual gas around the particle.
struct GasParams {
  double pressure = 0.0;                                   // Pa
  double temperature = 300.0;                              // K
  double molecule_mass = constants::kAirMoleculeMass;      // kg
  double accommodation = 0.9;                              // diffuse fraction in [0, 1]

  void validate() const;
  double mass_density() const;  // m_a P / (k_B T_a)
  double mean_speed() const;    // sqrt(8 k_B T_a / (pi m_a))
};

/// Shape functions of the torsional damping; finite as e -> 0.
struct TorsionalShape {
  double f1 = 0.0;
  double f2 = 0.0;
  double e4f3 = 0.0;  // e^4 f3, the combination that enters the rate
  double f3 = 0.0;
};

TorsionalShape torsional_shape(double e);

/// Damping rate [1/s] of the libration about a short axis of a prolate
/// spheroid (b == c):
///
///   gamma_phi = 5 rho_a vbar a^3 sqrt(1-e^2) / (8 rho (a^2+b^2) b^2)
///               * [ g_ac (f1 + (1-e^2) f2) + 3 (1 - g_ac (6-pi)/8) e^4 f3 ]
///
/// The 1/b^2 makes the expression a rate; its eccentricity dependence
/// matches the free-molecular torque on the spheroid (see tests).
double torsional_damping(const GasParams& gas, const EllipsoidGeometry& geom);

/// Damping rate [1/s] of centre-of-mass motion along a short axis.
double com_damping(const GasParams& gas, const EllipsoidGeometry& geom);

/// Bose occupation 1/(exp(hbar w / k_B T) - 1); zero at T = 0.
double thermal_occupation(double omega_m, double temperature);

}  // namespace levito
