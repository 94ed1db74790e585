#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace levito {

/// Covariance matrix of N bosonic modes, quadratures ordered
/// (x1, p1, x2, p2, ...). Vacuum variance is 1/2.
struct CovMatrix {
  Eigen::MatrixXd V;
  std::vector<std::string> labels;  // one per mode, may be empty

  int n_modes() const { return static_cast<int>(V.rows() / 2); }
};

/// Block-diagonal symplectic form, n copies of [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n_modes);

/// Sub-CM of the listed modes, in the listed order. Throws DomainError on
/// repeated or out-of-range indices.
CovMatrix select_modes(const CovMatrix& cm, std::span<const int> modes);

/// Symplectic eigenvalues of V in ascending order (one per mode). Throws
/// DomainError unless V is symmetric positive definite.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& V);

/// Smallest symplectic eigenvalue >= 1/2 - tol.
bool is_physical(const Eigen::MatrixXd& V, double tol = 1e-9);

/// Transpose of mode `mode` (its momentum flips sign).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& V, int mode);

/// Smallest symplectic eigenvalue of the partial transpose of a two-mode CM,
/// from the determinant invariants.
double eta_minus(const Eigen::Matrix4d& V);

/// max(0, -ln 2 eta_minus).
double log_negativity(const Eigen::Matrix4d& V);

/// Symmetric part (V + V^T) / 2.
Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& V);

}  // namespace levito
