#pragma once

// Helpers shared by the unit tests. Nothing here calls into levito, so the
// test-side oracles stay independent of the code they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <type_traits>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace testing_support {

inline Eigen::MatrixXd omega_form(int n) {
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    W(2 * k, 2 * k + 1) = 1.0;
    W(2 * k + 1, 2 * k) = -1.0;
  }
  return W;
}

// Two-mode mixing on modes (i, j): rotation in the (x_i, x_j) and (p_i, p_j) planes.
inline Eigen::MatrixXd mixer(int n, int i, int j, double theta) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int q = 0; q < 2; ++q) {
    S(2 * i + q, 2 * i + q) = c;
    S(2 * i + q, 2 * j + q) = s;
    S(2 * j + q, 2 * i + q) = -s;
    S(2 * j + q, 2 * j + q) = c;
  }
  return S;
}

inline Eigen::MatrixXd squeezer(int n, int i, double r) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  S(2 * i, 2 * i) = std::exp(-r);
  S(2 * i + 1, 2 * i + 1) = std::exp(r);
  return S;
}

inline Eigen::MatrixXd rotator(int n, int i, double phi) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  S(2 * i, 2 * i) = std::cos(phi);
  S(2 * i, 2 * i + 1) = std::sin(phi);
  S(2 * i + 1, 2 * i) = -std::sin(phi);
  S(2 * i + 1, 2 * i + 1) = std::cos(phi);
  return S;
}

// Product of random passive and squeezing layers.
inline Eigen::MatrixXd random_symplectic(int n, std::mt19937_64& rng, double max_r = 1.0) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> sq(-max_r, max_r);
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  for (int layer = 0; layer < 3; ++layer) {
    for (int i = 0; i < n; ++i) S = rotator(n, i, angle(rng)) * S;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) S = mixer(n, i, j, angle(rng)) * S;
    }
    for (int i = 0; i < n; ++i) S = squeezer(n, i, sq(rng)) * S;
  }
  return S;
}

// Williamson form S diag(nu) S^T with nu >= 1/2.
inline Eigen::MatrixXd random_cm(int n, std::mt19937_64& rng, double max_r = 1.0, double max_extra = 2.0) {
  std::uniform_real_distribution<double> extra(0.0, max_extra);
  Eigen::VectorXd nu(2 * n);
  for (int k = 0; k < n; ++k) nu(2 * k) = nu(2 * k + 1) = 0.5 + extra(rng);
  const Eigen::MatrixXd S = random_symplectic(n, rng, max_r);
  Eigen::MatrixXd V = S * nu.asDiagonal() * S.transpose();
  return 0.5 * (V + V.transpose());
}

inline Eigen::Matrix4d tmsv(double r) {
  const double c = 0.5 * std::cosh(2.0 * r), s = 0.5 * std::sinh(2.0 * r);
  Eigen::Matrix4d V;
  V << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return V;
}

// Composite Simpson rule with n (even) panels.
template <class F>
auto simpson(F&& f, double a, double b, int n) {
  using T = std::decay_t<decltype(f(a))>;
  const double h = (b - a) / n;
  T sum = f(a);
  sum += f(b);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return T(sum * (h / 3.0));
}

// Symplectic spectrum from (Omega V)^2, whose eigenvalues are -nu^2 in pairs.
inline Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& V) {
  const int n = static_cast<int>(V.rows() / 2);
  const Eigen::MatrixXd M = omega_form(n) * V;
  Eigen::EigenSolver<Eigen::MatrixXd> es(M * M);
  Eigen::VectorXd nu2 = (-es.eigenvalues().real()).eval();
  std::sort(nu2.data(), nu2.data() + nu2.size());
  Eigen::VectorXd nu(n);
  for (int k = 0; k < n; ++k) nu(k) = std::sqrt(std::max(0.0, 0.5 * (nu2(2 * k) + nu2(2 * k + 1))));
  return nu;
}

// Dense Kronecker solve of A X + X A^T + Q = 0, independent of the library's solver.
inline Eigen::MatrixXd lyapunov_kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
  const int n = static_cast<int>(A.rows());
  // Row-major vec: (A X)_{ij} = A_ik X_kj, (X A^T)_{ij} = X_ik A_jk.
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        K(i * n + j, k * n + j) += A(i, k);
        K(i * n + j, i * n + k) += A(j, k);
      }
  Eigen::VectorXd q(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i * n + j) = -Q(i, j);
  const Eigen::VectorXd x = K.fullPivLu().solve(q);
  Eigen::MatrixXd X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) X(i, j) = x(i * n + j);
  return 0.5 * (X + X.transpose());
}

// V = int_0^inf e^{At} Q e^{A^T t} dt for Hurwitz A. Van Loan's block
// exponential gives the integral over [0, h]; repeated doubling extends it.
inline Eigen::Matrix4d integral_oracle(const Eigen::Matrix4d& A, const Eigen::Matrix4d& Q) {
  Eigen::EigenSolver<Eigen::Matrix4d> es(A);
  const double h = 0.1 / es.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::Matrix<double, 8, 8> B = Eigen::Matrix<double, 8, 8>::Zero();
  B.topLeftCorner<4, 4>() = -A * h;
  B.topRightCorner<4, 4>() = Q * h;
  B.bottomRightCorner<4, 4>() = A.transpose() * h;
  const Eigen::Matrix<double, 8, 8> F = B.exp();
  Eigen::Matrix4d Phi = F.bottomRightCorner<4, 4>().transpose();
  Eigen::Matrix4d V = Phi * F.topRightCorner<4, 4>();
  for (int k = 0; k < 200 && Phi.norm() > 1e-18; ++k) {
    V += Phi * V * Phi.transpose();
    Phi = Phi * Phi;
  }
  return 0.5 * (V + V.transpose());
}

}  // namespace testing_support
