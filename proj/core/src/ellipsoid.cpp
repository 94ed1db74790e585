#include "levito/ellipsoid.hpp"

#include <cmath>
#include <numbers>

#include "levito/constants.hpp"
#include "levito/error.hpp"
#include "levito/quadrature.hpp"

namespace levito {
namespace {

// Below this eccentricity the closed form loses all digits to cancellation.
constexpr double kSeriesEccentricity = 1e-4;

double prolate_La(double e) {
  if (e < kSeriesEccentricity) {
    const double e2 = e * e;
    return 1.0 / 3.0 - 2.0 * e2 / 15.0 - 2.0 * e2 * e2 / 35.0;
  }
  const double e2 = e * e;
  return (1.0 - e2) / e2 * (-1.0 + std::atanh(e) / e);
}

}  // namespace

void EllipsoidGeometry::validate() const {
  if (!(c > 0.0)) throw DomainError("ellipsoid semiaxis c must be positive");
  if (!(a >= b && b >= c)) throw DomainError("ellipsoid semiaxes must satisfy a >= b >= c");
  if (!(rho > 0.0)) throw DomainError("ellipsoid density must be positive");
}

bool EllipsoidGeometry::is_spheroid() const { return std::abs(b - c) <= 1e-12 * b; }

double eccentricity(const EllipsoidGeometry& geom) {
  geom.validate();
  if (!geom.is_spheroid()) throw DomainError("eccentricity formula requires b == c");
  const double ratio = geom.b / geom.a;
  return std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
}

double depolarization_integral(const EllipsoidGeometry& geom, int axis) {
  geom.validate();
  const double a = geom.a, b = geom.b, c = geom.c;
  const double j = axis == 0 ? a : axis == 1 ? b : axis == 2 ? c : throw DomainError("axis must be 0, 1 or 2");
  // s = a^2 tan^2 u maps [0, inf) onto [0, pi/2); sqrt(s + a^2) = a sec u.
  auto integrand = [=](double u) {
    if (u >= 0.5 * std::numbers::pi) return 0.0;
    const double t = std::tan(u);
    const double sec = 1.0 / std::cos(u);
    const double s = a * a * t * t;
    return a * b * c * a * t * sec / ((s + j * j) * std::sqrt((s + b * b) * (s + c * c)));
  };
  quad::Options opt;
  opt.rel_tol = 1e-13;
  opt.abs_tol = 1e-15;
  return quad::integrate(integrand, 0.0, 0.5 * std::numbers::pi, opt).value;
}

DepolarizationFactors depolarization_factors(const EllipsoidGeometry& geom) {
  geom.validate();
  if (geom.is_spheroid()) {
    const double La = prolate_La(eccentricity(geom));
    const double Lb = 0.5 * (1.0 - La);
    return {La, Lb, Lb};
  }
  DepolarizationFactors f{depolarization_integral(geom, 0), depolarization_integral(geom, 1),
                          depolarization_integral(geom, 2)};
  const double sum = f.La + f.Lb + f.Lc;
  if (std::abs(sum - 1.0) > 1e-10) {
    throw QuadratureError("depolarization factors do not sum to one", std::abs(sum - 1.0));
  }
  return f;
}

Polarizability axis_polarizabilities(const EllipsoidGeometry& geom, double relative_permittivity) {
  if (!(relative_permittivity > 0.0)) throw DomainError("relative permittivity must be positive");
  const auto L = depolarization_factors(geom);
  const double eps0 = constants::kVacuumPermittivity;
  const double eps_r = relative_permittivity * eps0;
  const double volume_term = 4.0 * constants::kPi * geom.a * geom.b * geom.c * eps0;
  auto axis = [&](double Lj) {
    const double denom = 3.0 * eps0 + 3.0 * Lj * (eps_r - eps0);
    if (!(denom > 0.0)) throw DomainError("polarizability denominator is not positive");
    return volume_term * (eps_r - eps0) / denom;
  };
  return {axis(L.La), axis(L.Lb), axis(L.Lc), eps_r, L};
}

Eigen::Matrix3d euler_rotation(double theta, double phi) {
  Eigen::Matrix3d ry;
  ry << std::cos(theta), 0.0, -std::sin(theta),
        0.0, 1.0, 0.0,
        std::sin(theta), 0.0, std::cos(theta);
  Eigen::Matrix3d rz;
  rz << std::cos(phi), std::sin(phi), 0.0,
        -std::sin(phi), std::cos(phi), 0.0,
        0.0, 0.0, 1.0;
  return ry * rz;
}

Eigen::Matrix3d rotated_polarizability(const Polarizability& pol, double theta, double phi) {
  const Eigen::Matrix3d r = euler_rotation(theta, phi);
  const Eigen::Vector3d diag(pol.alpha_a, pol.alpha_b, pol.alpha_c);
  // R is orthogonal, so R^{-1} = R^T.
  Eigen::Matrix3d out = r.transpose() * diag.asDiagonal() * r;
  return 0.5 * (out + out.transpose());
}

MassInertia mass_and_inertia(const EllipsoidGeometry& geom) {
  geom.validate();
  const double m = 4.0 / 3.0 * constants::kPi * geom.a * geom.b * geom.c * geom.rho;
  return {m, m * (geom.a * geom.a + geom.b * geom.b) / 5.0};
}

}  // namespace levito
