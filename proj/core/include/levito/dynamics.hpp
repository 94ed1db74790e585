#pragma once

#include <Eigen/Dense>

#include "levito/gaussian.hpp"
#include "levito/trap_cavity.hpp"

namespace levito {

/// Linearized cavity + one mechanical mode. Quadratures (Q, P, X, Y), all
/// rates angular [rad/s].
struct LinearModel {
  double omega_m = 0.0;
  double gamma = 0.0;
  double g = 0.0;
  double Delta = 0.0;
  double kappa = 0.0;
  double n_bar = 0.0;
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();  // drift
  Eigen::Matrix4d D = Eigen::Matrix4d::Zero();  // diffusion, diagonal
};

LinearModel build_model(double omega_m, double g, double gamma, double n_bar, double Delta, double kappa);

/// Uses the coherent-scattering coupling of `mode`; the dispersive part is
/// orders of magnitude smaller and left out.
LinearModel build_model(const ModeParams& mode, double gamma, double n_bar, double Delta, double kappa);

/// Every eigenvalue of A has real part below -1e-12 max|A_ij|.
bool is_stable(const LinearModel& model);

/// Solve A X + X A^T + Q = 0 for a Hurwitz 4x4 A (Kronecker form with one
/// step of extended-precision refinement). `residual` receives
/// ||A X + X A^T + Q||_max / ||Q||_max when non-null.
Eigen::Matrix4d solve_lyapunov(const Eigen::Matrix4d& A, const Eigen::Matrix4d& Q, double* residual = nullptr);

/// Steady intracavity CM, labels ("mech", "cav"). Throws InstabilityError
/// for unstable models.
CovMatrix steady_state_cm(const LinearModel& model, double* residual = nullptr);

}  // namespace levito
