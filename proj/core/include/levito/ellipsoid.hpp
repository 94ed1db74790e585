#pragma once

#include <Eigen/Dense>

namespace levito {

/// Prolate-or-triaxial nano-ellipsoid, semiaxes a >= b >= c > 0.
struct EllipsoidGeometry {
  double a = 0.0;    // m, long semiaxis
  double b = 0.0;    // m
  double c = 0.0;    // m
  double rho = 0.0;  // kg/m^3

  /// Throws DomainError unless a >= b >= c > 0 and rho > 0.
  void validate() const;
  bool is_spheroid() const;  // b == c to 1e-12 relative
};

struct DepolarizationFactors {
  double La = 0.0;
  double Lb = 0.0;
  double Lc = 0.0;
};

struct Polarizability {
  double alpha_a = 0.0;  // C m^2 / V
  double alpha_b = 0.0;
  double alpha_c = 0.0;
  double eps_r = 0.0;    // absolute permittivity of the material, F/m
  DepolarizationFactors L;
};

struct MassInertia {
  double mass = 0.0;     // kg
  double inertia = 0.0;  // kg m^2, about a short axis
};

/// e = sqrt(1 - b^2/a^2). Prolate spheroids only (b == c).
double eccentricity(const EllipsoidGeometry& geom);

/// Closed form for spheroids, adaptive quadrature of the defining integral
/// otherwise. Sums to one.
DepolarizationFactors depolarization_factors(const EllipsoidGeometry& geom);

/// L_j = (abc/2) * int_0^inf ds / ((s + j^2) sqrt((s+a^2)(s+b^2)(s+c^2)))
/// evaluated numerically for semiaxis j in {0 (a), 1 (b), 2 (c)}. Works for
/// any a >= b >= c geometry; the spheroid closed form is checked against it.
double depolarization_integral(const EllipsoidGeometry& geom, int axis);

/// Quasi-static polarizabilities along the principal axes. `relative_permittivity`
/// is dimensionless (2.1 for silica); the absolute value eps_r = kappa * eps_0
/// is stored on the result.
Polarizability axis_polarizabilities(const EllipsoidGeometry& geom, double relative_permittivity);

/// Euler rotation R(theta, phi) = R_y(theta) R_z(phi) mapping body axes to the lab.
Eigen::Matrix3d euler_rotation(double theta, double phi);

/// R^{-1} diag(alpha_a, alpha_b, alpha_c) R.
Eigen::Matrix3d rotated_polarizability(const Polarizability& pol, double theta, double phi);

/// m = (4/3) pi a b c rho, I = m (a^2 + b^2) / 5.
MassInertia mass_and_inertia(const EllipsoidGeometry& geom);

}  // namespace levito
