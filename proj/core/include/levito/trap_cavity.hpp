#pragma once

#include <string_view>

#include "levito/ellipsoid.hpp"

namespace levito {

enum class ModeKind { torsional, com };

std::string_view to_string(ModeKind kind);
ModeKind parse_mode_kind(std::string_view name);  // "torsional" | "com"

struct TweezerParams {
  double power = 0.0;       // W, in the focus
  double waist = 0.0;       // m
  double wavelength = 0.0;  // m

  void validate() const;
  double field_amplitude() const;    // E0 = sqrt(4 P / (pi eps0 c w0^2)), V/m
  double wavenumber() const;         // 2 pi / lambda
  double angular_frequency() const;  // 2 pi c / lambda
};

struct CavityParams {
  double length = 0.0;      // m
  double waist = 0.0;       // m
  double wavelength = 0.0;  // m
  double phase = 0.0;       // rad, standing-wave phase at the particle

  void validate() const;
  double mode_volume() const;  // pi L w^2 / 4
  double wavenumber() const;
  double angular_frequency() const;  // bare resonance
};

/// Everything the linearized dynamics needs about one mechanical mode.
/// Frequencies and couplings are angular [rad/s].
struct ModeParams {
  ModeKind kind = ModeKind::torsional;
  double omega_m = 0.0;
  double g_disp = 0.0;  // dispersive coupling
  double g_cs = 0.0;    // coherent-scattering coupling
  double zpf = 0.0;     // m (CoM) or rad (torsional)
  double omega_c_shifted = 0.0;
  double Delta = 0.0;   // omega_c - omega_0
};

struct Couplings {
  double dispersive = 0.0;
  double coherent = 0.0;
};

/// omega_y = sqrt(E0^2 alpha_a / (m w0^2)).
double com_frequency(const TweezerParams& tweezer, const EllipsoidGeometry& geom, const Polarizability& pol);

/// omega_phi = E0 sqrt((alpha_a - alpha_b) / 2I). Throws DomainError when
/// alpha_a <= alpha_b (no restoring torque).
double torsional_frequency(const TweezerParams& tweezer, const EllipsoidGeometry& geom,
                           const Polarizability& pol);

/// sqrt(hbar / (2 * mass_or_inertia * omega)).
double zero_point(double mass_or_inertia, double omega_m);

/// g_y and g_sy. These follow sin(2 varphi) and sin(varphi) and carry their sign.
Couplings couplings_com(const TweezerParams& tweezer, const CavityParams& cavity, const Polarizability& pol,
                        double y0);

/// g_phi and g_sphi, following cos^2(varphi) and cos(varphi).
Couplings couplings_torsional(const TweezerParams& tweezer, const CavityParams& cavity,
                              const Polarizability& pol, double phi0);

/// Cavity resonance pulled by the particle. The torsional branch uses
/// (alpha_a + alpha_b); the CoM branch uses alpha_a.
double shifted_cavity_frequency(ModeKind kind, const CavityParams& cavity, const Polarizability& pol);

/// Assemble ModeParams for `kind`. Delta is taken as given (scenarios set it
/// relative to omega_m, e.g. the red sideband Delta = omega_m).
ModeParams mode_params(ModeKind kind, const TweezerParams& tweezer, const CavityParams& cavity,
                       const EllipsoidGeometry& geom, const Polarizability& pol, double Delta);

/// Same, with Delta = omega_m.
ModeParams mode_params_red_sideband(ModeKind kind, const TweezerParams& tweezer, const CavityParams& cavity,
                                    const EllipsoidGeometry& geom, const Polarizability& pol);

/// Cavity waist for which the coherent-scattering coupling of `kind` equals
/// `target_g` [rad/s]. Bisection over [1 um, 1 mm] to 1e-10 relative; the
/// waist already present in `cavity` is ignored. Throws DomainError when the
/// target is outside the bracket.
double solve_waist_for_target_coupling(ModeKind kind, double target_g, const TweezerParams& tweezer,
                                       const CavityParams& cavity, const EllipsoidGeometry& geom,
                                       const Polarizability& pol);

}  // namespace levito
