#include "levito/trap_cavity.hpp"

#include <cmath>
#include <string>

#include "levito/constants.hpp"
#include "levito/error.hpp"

namespace levito {

using constants::kHbar;
using constants::kPi;
using constants::kVacuumPermittivity;

std::string_view to_string(ModeKind kind) { return kind == ModeKind::torsional ? "torsional" : "com"; }

ModeKind parse_mode_kind(std::string_view name) {
  if (name == "torsional") return ModeKind::torsional;
  if (name == "com") return ModeKind::com;
  throw DomainError("unknown mode kind '" + std::string(name) + "' (expected torsional or com)");
}

void TweezerParams::validate() const {
  if (!(power > 0.0)) throw DomainError("tweezer power must be positive");
  if (!(waist > 0.0)) throw DomainError("tweezer waist must be positive");
  if (!(wavelength > 0.0)) throw DomainError("tweezer wavelength must be positive");
}

double TweezerParams::field_amplitude() const {
  return std::sqrt(4.0 * power / (kPi * kVacuumPermittivity * constants::kSpeedOfLight * waist * waist));
}

double TweezerParams::wavenumber() const { return constants::kTwoPi / wavelength; }

double TweezerParams::angular_frequency() const {
  return constants::kTwoPi * constants::kSpeedOfLight / wavelength;
}

void CavityParams::validate() const {
  if (!(length > 0.0)) throw DomainError("cavity length must be positive");
  if (!(waist > 0.0)) throw DomainError("cavity waist must be positive");
  if (!(wavelength > 0.0)) throw DomainError("cavity wavelength must be positive");
}

double CavityParams::mode_volume() const { return kPi * length * waist * waist / 4.0; }

double CavityParams::wavenumber() const { return constants::kTwoPi / wavelength; }

double CavityParams::angular_frequency() const {
  return constants::kTwoPi * constants::kSpeedOfLight / wavelength;
}

double com_frequency(const TweezerParams& tweezer, const EllipsoidGeometry& geom, const Polarizability& pol) {
  tweezer.validate();
  const auto [m, inertia] = mass_and_inertia(geom);
  const double e0 = tweezer.field_amplitude();
  return std::sqrt(e0 * e0 * pol.alpha_a / (m * tweezer.waist * tweezer.waist));
}

double torsional_frequency(const TweezerParams& tweezer, const EllipsoidGeometry& geom,
                           const Polarizability& pol) {
  tweezer.validate();
  const double anisotropy = pol.alpha_a - pol.alpha_b;
  if (!(anisotropy > 0.0)) {
    throw DomainError("torsional mode needs alpha_a > alpha_b (no restoring torque for this particle)");
  }
  const auto [m, inertia] = mass_and_inertia(geom);
  return tweezer.field_amplitude() * std::sqrt(anisotropy / (2.0 * inertia));
}

double zero_point(double mass_or_inertia, double omega_m) {
  if (!(omega_m > 0.0)) throw DomainError("zero_point needs omega_m > 0");
  if (!(mass_or_inertia > 0.0)) throw DomainError("zero_point needs a positive mass or inertia");
  return std::sqrt(kHbar / (2.0 * mass_or_inertia * omega_m));
}

Couplings couplings_com(const TweezerParams& tweezer, const CavityParams& cavity, const Polarizability& pol,
                        double y0) {
  tweezer.validate();
  cavity.validate();
  const double vc = cavity.mode_volume();
  const double wc = cavity.angular_frequency();
  const double kc = cavity.wavenumber();
  const double e0 = tweezer.field_amplitude();
  const double phase = cavity.phase;
  Couplings g;
  g.dispersive = pol.alpha_a * wc * kc * y0 * std::sin(2.0 * phase) / (2.0 * kVacuumPermittivity * vc);
  g.coherent = pol.alpha_a * e0 * kc * y0 * std::sin(phase) * std::sqrt(wc / (2.0 * kHbar * kVacuumPermittivity * vc));
  return g;
}

Couplings couplings_torsional(const TweezerParams& tweezer, const CavityParams& cavity,
                              const Polarizability& pol, double phi0) {
  tweezer.validate();
  cavity.validate();
  const double vc = cavity.mode_volume();
  const double wc = cavity.angular_frequency();
  const double e0 = tweezer.field_amplitude();
  const double anisotropy = pol.alpha_a - pol.alpha_b;
  const double c = std::cos(cavity.phase);
  Couplings g;
  g.dispersive = anisotropy * wc * phi0 * c * c / (2.0 * kVacuumPermittivity * vc);
  g.coherent = anisotropy * e0 * phi0 * c * std::sqrt(wc / (8.0 * kHbar * kVacuumPermittivity * vc));
  return g;
}

double shifted_cavity_frequency(ModeKind kind, const CavityParams& cavity, const Polarizability& pol) {
  cavity.validate();
  const double c = std::cos(cavity.phase);
  const double denom = kVacuumPermittivity * cavity.mode_volume();
  const double wc = cavity.angular_frequency();
  if (kind == ModeKind::com) return wc * (1.0 - pol.alpha_a * c * c / (2.0 * denom));
  return wc * (1.0 - (pol.alpha_a + pol.alpha_b) * c * c / (4.0 * denom));
}

ModeParams mode_params(ModeKind kind, const TweezerParams& tweezer, const CavityParams& cavity,
                       const EllipsoidGeometry& geom, const Polarizability& pol, double Delta) {
  const auto [m, inertia] = mass_and_inertia(geom);
  ModeParams out;
  out.kind = kind;
  Couplings g;
  if (kind == ModeKind::torsional) {
    out.omega_m = torsional_frequency(tweezer, geom, pol);
    out.zpf = zero_point(inertia, out.omega_m);
    g = couplings_torsional(tweezer, cavity, pol, out.zpf);
  } else {
    out.omega_m = com_frequency(tweezer, geom, pol);
    out.zpf = zero_point(m, out.omega_m);
    g = couplings_com(tweezer, cavity, pol, out.zpf);
  }
  out.g_disp = g.dispersive;
  out.g_cs = g.coherent;
  out.omega_c_shifted = shifted_cavity_frequency(kind, cavity, pol);
  out.Delta = Delta;
  return out;
}

ModeParams mode_params_red_sideband(ModeKind kind, const TweezerParams& tweezer, const CavityParams& cavity,
                                    const EllipsoidGeometry& geom, const Polarizability& pol) {
  auto p = mode_params(kind, tweezer, cavity, geom, pol, 0.0);
  p.Delta = p.omega_m;
  return p;
}

double solve_waist_for_target_coupling(ModeKind kind, double target_g, const TweezerParams& tweezer,
                                       const CavityParams& cavity, const EllipsoidGeometry& geom,
                                       const Polarizability& pol) {
  if (!(target_g > 0.0)) throw DomainError("target coupling must be positive");
  auto coupling_at = [&](double waist) {
    CavityParams c = cavity;
    c.waist = waist;
    return std::abs(mode_params(kind, tweezer, c, geom, pol, 0.0).g_cs);
  };
  double lo = 1e-6;
  double hi = 1e-3;
  const double g_lo = coupling_at(lo);  // largest coupling in the bracket
  const double g_hi = coupling_at(hi);
  if (!(target_g <= g_lo && target_g >= g_hi)) {
    throw DomainError("target coupling " + std::to_string(target_g) + " rad/s is not reachable with a cavity waist in [1 um, 1 mm] (range " +
                      std::to_string(g_hi) + " .. " + std::to_string(g_lo) + " rad/s)");
  }
  // g decreases monotonically with the waist.
  while ((hi - lo) > 1e-10 * lo) {
    const double mid = 0.5 * (lo + hi);
    if (coupling_at(mid) > target_g) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace levito
