#include "levito/gas_damping.hpp"

#include <cmath>

#include "levito/error.hpp"

namespace levito {
namespace {

constexpr double kSeriesEccentricity = 1e-3;

using constants::kBoltzmann;
using constants::kPi;

double asin_over_e(double e) {
  if (e < kSeriesEccentricity) {
    const double e2 = e * e;
    return 1.0 + e2 / 6.0 + 3.0 * e2 * e2 / 40.0;
  }
  return std::asin(e) / e;
}

double spheroid_eccentricity(const EllipsoidGeometry& geom) {
  const double e = eccentricity(geom);
  if (!(e < 1.0)) throw DomainError("eccentricity must be below one");
  return e;
}

}  // namespace

void GasParams::validate() const {
  if (!(pressure >= 0.0)) throw DomainError("gas pressure must be non-negative");
  if (!(temperature > 0.0)) throw DomainError("gas temperature must be positive");
  if (!(molecule_mass > 0.0)) throw DomainError("gas molecule mass must be positive");
  if (!(accommodation >= 0.0 && accommodation <= 1.0)) {
    throw DomainError("accommodation coefficient must lie in [0, 1]");
  }
}

double GasParams::mass_density() const { return molecule_mass * pressure / (kBoltzmann * temperature); }

double GasParams::mean_speed() const { return std::sqrt(8.0 * kBoltzmann * temperature / (kPi * molecule_mass)); }

TorsionalShape torsional_shape(double e) {
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("eccentricity must lie in [0, 1)");
  const double e2 = e * e;
  const double e4 = e2 * e2;
  TorsionalShape s;
  if (e < kSeriesEccentricity) {
    s.f1 = 1.0 - 3.0 * e2 / 10.0 - 3.0 * e4 / 56.0;
    s.f2 = 1.0 - e2 / 10.0 - 3.0 * e4 / 280.0;
    s.f3 = 4.0 / 15.0 + 2.0 * e2 / 35.0 + e4 / 42.0;
    s.e4f3 = e4 * s.f3;
    return s;
  }
  const double root = std::sqrt(1.0 - e2);
  const double as = std::asin(e) / e;
  s.f1 = 3.0 / (8.0 * e2) * (as - (1.0 - 2.0 * e2) * root);
  s.f2 = 3.0 / (16.0 * e2) * ((1.0 + 2.0 * e2) * root - as * (1.0 - 4.0 * e2));
  s.e4f3 = 0.25 * ((3.0 - 2.0 * e2) * root + as * (4.0 * e2 - 3.0));
  s.f3 = s.e4f3 / e4;
  return s;
}

double torsional_damping(const GasParams& gas, const EllipsoidGeometry& geom) {
  gas.validate();
  const double e = spheroid_eccentricity(geom);
  const double a = geom.a;
  const double b = geom.b;
  const double gac = gas.accommodation;
  const auto s = torsional_shape(e);
  const double e2 = e * e;
  const double bracket = gac * (s.f1 + (1.0 - e2) * s.f2) + 3.0 * (1.0 - gac * (6.0 - kPi) / 8.0) * s.e4f3;
  const double prefactor = 5.0 * gas.mass_density() * gas.mean_speed() * a * a * a * std::sqrt(1.0 - e2) /
                           (8.0 * geom.rho * (a * a + b * b) * b * b);
  return prefactor * bracket;
}

double com_damping(const GasParams& gas, const EllipsoidGeometry& geom) {
  gas.validate();
  const double e = spheroid_eccentricity(geom);
  const double e2 = e * e;
  const double gac = gas.accommodation;
  const double root = std::sqrt(1.0 - e2);
  const double as = asin_over_e(e);
  // (1-e^2)/e^2 + (2e^2-1) sqrt(1-e^2) asin(e)/e^3 -> 4/3 at the sphere.
  double shape;
  if (e < kSeriesEccentricity) {
    shape = 4.0 / 3.0 - 8.0 * e2 / 15.0 - 4.0 * e2 * e2 / 21.0;
  } else {
    shape = (1.0 - e2) / e2 + (2.0 * e2 - 1.0) * root * as / e2;
  }
  const double bracket = 0.5 * gac * (1.0 - e2 + root * as) + (1.0 - gac * (6.0 - kPi) / 8.0) * shape;
  return 3.0 * gas.mass_density() * gas.mean_speed() * geom.a / (8.0 * geom.rho * geom.b * geom.b) * bracket;
}

double thermal_occupation(double omega_m, double temperature) {
  if (!(omega_m > 0.0)) throw DomainError("thermal_occupation needs omega_m > 0");
  if (!(temperature >= 0.0)) throw DomainError("temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(constants::kHbar * omega_m / (kBoltzmann * temperature));
}

}  // namespace levito
