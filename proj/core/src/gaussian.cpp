#include "levito/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "levito/error.hpp"

namespace levito {

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

CovMatrix select_modes(const CovMatrix& cm, std::span<const int> modes) {
  const int n = cm.n_modes();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int m : modes) {
    if (m < 0 || m >= n) throw DomainError("select_modes: mode index " + std::to_string(m) + " out of range");
    if (seen[static_cast<std::size_t>(m)]) throw DomainError("select_modes: repeated mode " + std::to_string(m));
    seen[static_cast<std::size_t>(m)] = true;
  }
  const auto k = static_cast<int>(modes.size());
  CovMatrix out;
  out.V.resize(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) out.V.block<2, 2>(2 * i, 2 * j) = cm.V.block<2, 2>(2 * modes[i], 2 * modes[j]);
    if (!cm.labels.empty()) out.labels.push_back(cm.labels[static_cast<std::size_t>(modes[i])]);
  }
  return out;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& V) {
  if (V.rows() != V.cols() || V.rows() % 2 != 0 || V.rows() == 0) {
    throw DomainError("symplectic_eigenvalues: expected a non-empty 2N x 2N matrix");
  }
  const double scale = V.cwiseAbs().maxCoeff();
  if (!((V - V.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale)) {
    throw DomainError("symplectic_eigenvalues: matrix is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(V);
  if (llt.info() != Eigen::Success) throw DomainError("symplectic_eigenvalues: matrix is not positive definite");

  // Omega V has eigenvalues +-i nu; sorting the moduli puts each pair together.
  const int n = static_cast<int>(V.rows() / 2);
  Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * V, false);
  std::vector<double> mods(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < 2 * n; ++i) mods[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()[i]);
  std::sort(mods.begin(), mods.end());
  Eigen::VectorXd nu(n);
  for (int k = 0; k < n; ++k) {
    const double lo = mods[static_cast<std::size_t>(2 * k)];
    const double hi = mods[static_cast<std::size_t>(2 * k + 1)];
    if (hi - lo > 1e-9 * std::max(1.0, hi)) {
      throw NumericalError("symplectic_eigenvalues: unpaired spectrum (" + std::to_string(lo) + ", " +
                           std::to_string(hi) + ")");
    }
    nu(k) = 0.5 * (lo + hi);
  }
  return nu;
}

bool is_physical(const Eigen::MatrixXd& V, double tol) {
  try {
    return symplectic_eigenvalues(V).minCoeff() >= 0.5 - tol;
  } catch (const Error&) {
    return false;
  }
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& V, int mode) {
  if (mode < 0 || 2 * mode + 1 >= V.rows()) throw DomainError("partial_transpose: mode out of range");
  Eigen::MatrixXd out = V;
  out.row(2 * mode + 1) *= -1.0;
  out.col(2 * mode + 1) *= -1.0;
  return out;
}

double eta_minus(const Eigen::Matrix4d& V) {
  // invariants in extended precision: squeezed inputs make the 2x2 determinants cancel
  using ld = long double;
  const Eigen::Matrix<ld, 4, 4> W = V.cast<ld>();
  auto det2 = [&](int r, int c) { return W(r, c) * W(r + 1, c + 1) - W(r, c + 1) * W(r + 1, c); };
  const ld sigma = det2(0, 0) + det2(2, 2) - 2.0L * det2(0, 2);
  const ld det = W.determinant();
  ld disc = sigma * sigma - 4.0L * det;
  if (disc < 0.0L) {
    if (disc < -1e-12L * std::max(1.0L, sigma * sigma)) {
      throw NumericalError("eta_minus: negative discriminant " + std::to_string(static_cast<double>(disc)));
    }
    disc = 0.0L;
  }
  // small root through the product of the roots; the difference form cancels
  const ld big = sigma + std::sqrt(disc);
  const ld inner = big > 0.0L ? 2.0L * det / big : -1.0L;
  if (inner < 0.0L) throw NumericalError("eta_minus: partially transposed spectrum is not positive");
  return static_cast<double>(std::sqrt(inner));
}

double log_negativity(const Eigen::Matrix4d& V) { return std::max(0.0, -std::log(2.0 * eta_minus(V))); }

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& V) { return 0.5 * (V + V.transpose()); }

}  // namespace levito
