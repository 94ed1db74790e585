#include "levito/dynamics.hpp"

#include <cmath>

#include "levito/error.hpp"

namespace levito {
namespace {

using Mat16 = Eigen::Matrix<double, 16, 16>;
using Vec16 = Eigen::Matrix<double, 16, 1>;

// vec(A X + X A^T) = (I (x) A + A (x) I) vec(X), column-major vec.
Mat16 lyapunov_operator(const Eigen::Matrix4d& A) {
  Mat16 L = Mat16::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        L(i + 4 * j, k + 4 * j) += A(i, k);
        L(i + 4 * j, i + 4 * k) += A(j, k);
      }
    }
  }
  return L;
}

Eigen::Matrix4d residual_ld(const Eigen::Matrix4d& A, const Eigen::Matrix4d& X, const Eigen::Matrix4d& Q) {
  Eigen::Matrix4d r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      long double s = Q(i, j);
      for (int k = 0; k < 4; ++k) {
        s += static_cast<long double>(A(i, k)) * X(k, j);
        s += static_cast<long double>(X(i, k)) * A(j, k);
      }
      r(i, j) = static_cast<double>(s);
    }
  }
  return r;
}

}  // namespace

LinearModel build_model(double omega_m, double g, double gamma, double n_bar, double Delta, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("build_model: kappa must be positive");
  if (!(gamma >= 0.0)) throw DomainError("build_model: gamma must be non-negative");
  if (!(n_bar >= 0.0)) throw DomainError("build_model: n_bar must be non-negative");
  if (!std::isfinite(omega_m) || !std::isfinite(g) || !std::isfinite(Delta)) {
    throw DomainError("build_model: non-finite parameter");
  }
  LinearModel m;
  m.omega_m = omega_m;
  m.gamma = gamma;
  m.g = g;
  m.Delta = Delta;
  m.kappa = kappa;
  m.n_bar = n_bar;
  m.A << -gamma / 2, omega_m, 0, 0,
         -omega_m, -gamma / 2, 2 * g, 0,
         0, 0, -kappa / 2, Delta,
         2 * g, 0, -Delta, -kappa / 2;
  const double dm = gamma * (2 * n_bar + 1) / 2;
  m.D.diagonal() << dm, dm, kappa / 2, kappa / 2;
  return m;
}

LinearModel build_model(const ModeParams& mode, double gamma, double n_bar, double Delta, double kappa) {
  return build_model(mode.omega_m, mode.g_cs, gamma, n_bar, Delta, kappa);
}

bool is_stable(const LinearModel& model) {
  const double margin = 1e-12 * model.A.cwiseAbs().maxCoeff();
  Eigen::EigenSolver<Eigen::Matrix4d> es(model.A, false);
  return (es.eigenvalues().real().array() < -margin).all();
}

Eigen::Matrix4d solve_lyapunov(const Eigen::Matrix4d& A, const Eigen::Matrix4d& Q, double* residual) {
  const Mat16 L = lyapunov_operator(A);
  Eigen::FullPivLU<Mat16> lu(L);
  if (!lu.isInvertible()) throw NumericalError("solve_lyapunov: singular Lyapunov operator");
  const Vec16 rhs = -Eigen::Map<const Vec16>(Q.data());
  Vec16 x = lu.solve(rhs);
  Eigen::Matrix4d X = Eigen::Map<Eigen::Matrix4d>(x.data());
  for (int it = 0; it < 2; ++it) {
    const Eigen::Matrix4d r = residual_ld(A, X, Q);
    const Vec16 dx = lu.solve(-Eigen::Map<const Vec16>(r.data()));
    X += Eigen::Map<const Eigen::Matrix4d>(dx.data());
  }
  X = 0.5 * (X + X.transpose()).eval();
  if (residual != nullptr) {
    const double qn = Q.cwiseAbs().maxCoeff();
    *residual = residual_ld(A, X, Q).cwiseAbs().maxCoeff() / (qn > 0.0 ? qn : 1.0);
  }
  return X;
}

CovMatrix steady_state_cm(const LinearModel& model, double* residual) {
  if (!is_stable(model)) throw InstabilityError("steady_state_cm: drift matrix is not Hurwitz");
  CovMatrix cm;
  cm.V = solve_lyapunov(model.A, model.D, residual);
  cm.labels = {"mech", "cav"};
  return cm;
}

}  // namespace levito
