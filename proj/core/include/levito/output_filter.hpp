#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "levito/dynamics.hpp"
#include "levito/gaussian.hpp"

namespace levito {

enum class FilterKind { tms, bs };

std::string_view to_string(FilterKind kind);
FilterKind parse_filter_kind(std::string_view name);  // "tms" | "bs"

/// Causal exponential filter, a_f(t) = int_0^inf F(tau) a_out(t - tau) dtau.
/// With f(w) = int f(t) e^{i w t} dt and a field rotating as e^{-i w t}:
///   tms: F = sqrt(2 Gamma) e^{-Gamma tau} e^{+i wc tau}  (Stokes sideband)
///   bs:  F = sqrt(2 Gamma) e^{-Gamma tau} e^{-i wc tau}  (anti-Stokes)
/// Both have unit L2 norm. A kernel reaching into the future would not
/// commute with the mechanics and yields an unphysical CM.
struct FilterSpec {
  FilterKind kind = FilterKind::tms;
  double Gamma = 0.0;         // rad/s
  double omega_center = 0.0;  // rad/s

  void validate() const;
};

/// Closed-form spectrum f(w).
std::complex<double> filter_spectrum(const FilterSpec& spec, double omega);

/// Kernel value in the time domain (zero for tau < 0).
std::complex<double> filter_kernel(const FilterSpec& spec, double t);

using Matrix64c = Eigen::Matrix<std::complex<double>, 6, 4>;

/// S(w) = C M(w) + P with M = (i w + A)^{-1}: rows (Q, P) of the mechanics,
/// then two copies of the output quadratures sqrt(kappa) X - X_in.
Matrix64c transfer_S(double omega, const LinearModel& model);

struct OutputOptions {
  double rel_tol = 1e-6;
  double window_scale = 1.0;  // multiplies the split point W
  std::size_t max_subintervals = 20000;
};

/// [a_tms, a_bs^dagger] = int F_tms F_bs^* dtau = Gamma / (Gamma - i omega_m).
std::complex<double> filter_overlap(double Gamma, double omega_m);

/// Real 4x4 map on (x_tms, p_tms, x_bs, p_bs) that replaces the two filtered
/// modes by their symmetric (Loewdin) orthonormalization G^{-1/2} a. Identity
/// when the overlap vanishes.
Eigen::Matrix4d orthonormalizing_map(double Gamma, double omega_m);

struct OutputResult {
  CovMatrix cm;   // modes (mech, tms, bs), filtered modes orthonormalized
  CovMatrix raw;  // same modes straight from the kernels
  double mech_mismatch = 0.0; // max relative deviation from the intracavity block
  double quad_error = 0.0;    // error estimate in correlation units
  std::size_t evaluations = 0;
};

/// Steady CM of the mechanics and the two filtered output modes, both
/// centred on omega_m with width Gamma. The raw kernels overlap, so the
/// returned CM uses orthonormalized filtered modes. Throws InstabilityError, QuadratureError,
/// or NumericalError when the result is unphysical or the delta rows disagree
/// with the intracavity solution.
OutputResult output_cm(const LinearModel& model, double Gamma, const OutputOptions& opt = {});

enum class OutputPair { tms_tor, bs_tor, tms_bs };

std::string_view to_string(OutputPair pair);

/// Two-mode CM of a pair. Pairs with the mechanics come from the raw kernels,
/// each of which is an exact bosonic mode; the tms-bs pair needs the
/// orthonormalized modes.
Eigen::Matrix4d pair_cm(const OutputResult& out, OutputPair pair);

double pair_entanglement(const OutputResult& out, OutputPair pair);

/// The integrand (1/pi) Re[Z D Z^H], Z = T(w) S(w), at one frequency.
Eigen::Matrix<double, 6, 6> output_spectral_density(const LinearModel& model, double Gamma, double omega);

}  // namespace levito
