#include "levito/bell_swap.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "levito/error.hpp"

namespace levito {

void SwapSetup::validate() const {
  if (!(T_r > 0.0 && T_r < 1.0)) throw DomainError("beam splitter transmissivity must lie in (0, 1)");
  if (!(eta1 > 0.0 && eta1 <= 1.0) || !(eta2 > 0.0 && eta2 <= 1.0)) {
    throw DomainError("detector efficiencies must lie in (0, 1]");
  }
}

void LossChannel::validate() const {
  if (!(eta0 > 0.0 && eta0 <= 1.0)) throw DomainError("intrinsic efficiency must lie in (0, 1]");
  if (!(alpha0 >= 0.0)) throw DomainError("fiber attenuation must be non-negative");
  if (!(d >= 0.0)) throw DomainError("fiber length must be non-negative");
}

double detection_efficiency(const LossChannel& chan) {
  chan.validate();
  return chan.eta0 * std::pow(10.0, -chan.alpha0 * chan.d / 10.0);
}

JointCM joint_cm_from_pairs(const Eigen::Matrix4d& pair_A, const Eigen::Matrix4d& pair_B) {
  JointCM j;
  // (tor_A, tor_B, cav_A, cav_B) <- A: (0, 2), B: (1, 3)
  const std::array<int, 2> slot_A = {0, 2};
  const std::array<int, 2> slot_B = {1, 3};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      j.V.block<2, 2>(2 * slot_A[r], 2 * slot_A[c]) = pair_A.block<2, 2>(2 * r, 2 * c);
      j.V.block<2, 2>(2 * slot_B[r], 2 * slot_B[c]) = pair_B.block<2, 2>(2 * r, 2 * c);
    }
  }
  return j;
}

JointCM joint_cm(const CovMatrix& out_A, const CovMatrix& out_B, FilterKind mode_choice) {
  if (out_A.n_modes() != 3 || out_B.n_modes() != 3) throw DomainError("joint_cm expects 3-mode output CMs");
  const std::array<int, 2> modes = {0, mode_choice == FilterKind::tms ? 1 : 2};
  return joint_cm_from_pairs(select_modes(out_A, modes).V, select_modes(out_B, modes).V);
}

CovMatrix conditioned_cm(const JointCM& joint, const SwapSetup& setup) {
  setup.validate();
  const double T = setup.T_r;
  const double st = std::sqrt(T * (1.0 - T));
  const Eigen::Matrix4d E = joint.E();
  const Eigen::Matrix4d O = joint.O();
  const Eigen::Matrix4d C = joint.C();

  const double a1 = O(0, 0), a2 = O(1, 1), a3 = O(0, 1);
  const double b1 = O(2, 2), b2 = O(3, 3), b3 = O(2, 3);
  const double z1 = O(0, 2), z2 = O(1, 3), z3 = O(0, 3), z4 = O(1, 2);

  const double r1 = (1.0 - T) * a1 + T * b1 - 2.0 * st * z1 + (1.0 - setup.eta1) / (2.0 * setup.eta1);
  const double r2 = (1.0 - T) * b2 + T * a2 + 2.0 * st * z2 + (1.0 - setup.eta2) / (2.0 * setup.eta2);
  const double r3 = st * (b3 - a3) - (1.0 - T) * z3 + T * z4;
  const double det = r1 * r2 - r3 * r3;
  if (!(det > 0.0)) throw NumericalError("conditioned_cm: measured quadratures have singular covariance");

  Eigen::Matrix2d K11, K22, K12;
  K11 << (1.0 - T) * r2, st * r3, st * r3, T * r1;
  K22 << T * r2, -st * r3, -st * r3, (1.0 - T) * r1;
  K12 << -st * r2, (1.0 - T) * r3, -T * r3, st * r1;

  const Eigen::Matrix<double, 4, 2> C1 = C.leftCols<2>();
  const Eigen::Matrix<double, 4, 2> C2 = C.rightCols<2>();
  const Eigen::Matrix4d sum =
      C1 * K11 * C1.transpose() + C2 * K22 * C2.transpose() + C1 * K12 * C2.transpose() + C2 * K12.transpose() * C1.transpose();

  CovMatrix out;
  out.V = symmetrized(E - sum / det);
  out.labels = {"tor_A", "tor_B"};
  return out;
}

namespace phase_space {

Eigen::MatrixXd beam_splitter(int n_modes, int i, int j, double T) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  const double t = std::sqrt(T);
  const double r = std::sqrt(1.0 - T);
  for (int q = 0; q < 2; ++q) {
    S(2 * i + q, 2 * i + q) = t;
    S(2 * i + q, 2 * j + q) = r;
    S(2 * j + q, 2 * i + q) = -r;
    S(2 * j + q, 2 * j + q) = t;
  }
  return S;
}

Eigen::MatrixXd condition_homodyne(const Eigen::MatrixXd& V, int mode, int q) {
  const int n = static_cast<int>(V.rows() / 2);
  std::vector<int> keep;
  for (int k = 0; k < 2 * n; ++k) {
    if (k / 2 != mode) keep.push_back(k);
  }
  const auto m = static_cast<int>(keep.size());
  Eigen::MatrixXd A(m, m), B(2, 2), C(m, 2);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) A(r, c) = V(keep[r], keep[c]);
    for (int c = 0; c < 2; ++c) C(r, c) = V(keep[r], 2 * mode + c);
  }
  B = V.block<2, 2>(2 * mode, 2 * mode);
  // (Pi B Pi)^+ with Pi the projector on the measured quadrature.
  Eigen::Matrix2d pinv = Eigen::Matrix2d::Zero();
  if (!(B(q, q) > 0.0)) throw NumericalError("condition_homodyne: measured quadrature has zero variance");
  pinv(q, q) = 1.0 / B(q, q);
  return A - C * pinv * C.transpose();
}

Eigen::MatrixXd apply_loss(const Eigen::MatrixXd& V, int mode, double eta) {
  const int n = static_cast<int>(V.rows() / 2);
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * n + 2, 2 * n + 2);
  big.topLeftCorner(2 * n, 2 * n) = V;
  big.bottomRightCorner<2, 2>() = 0.5 * Eigen::Matrix2d::Identity();
  const Eigen::MatrixXd S = beam_splitter(n + 1, mode, n, eta);
  const Eigen::MatrixXd mixed = S * big * S.transpose();
  return mixed.topLeftCorner(2 * n, 2 * n);
}

}  // namespace phase_space

CovMatrix conditioned_cm_oracle(const JointCM& joint, const SwapSetup& setup) {
  setup.validate();
  // Modes 0, 1: mechanics; 2: cav_A; 3: cav_B. Port 2 must carry
  // sqrt(1-T) a_A - sqrt(T) a_B and port 3 sqrt(T) a_A + sqrt(1-T) a_B: negate
  // a_B, mix with transmissivity 1 - T, then negate port 3.
  Eigen::MatrixXd negate_3 = Eigen::MatrixXd::Identity(8, 8);
  negate_3(6, 6) = -1.0;
  negate_3(7, 7) = -1.0;
  const Eigen::MatrixXd total = negate_3 * phase_space::beam_splitter(4, 2, 3, 1.0 - setup.T_r) * negate_3;
  Eigen::MatrixXd V = joint.V;
  V = total * V * total.transpose();
  V = phase_space::apply_loss(V, 2, setup.eta1);
  V = phase_space::apply_loss(V, 3, setup.eta2);
  V = phase_space::condition_homodyne(V, 3, 1);  // p of port 3
  V = phase_space::condition_homodyne(V, 2, 0);  // q of port 2
  CovMatrix out;
  out.V = symmetrized(V);
  out.labels = {"tor_A", "tor_B"};
  return out;
}

double swap_entanglement(const CovMatrix& out_A, const CovMatrix& out_B, const SwapSetup& setup) {
  const CovMatrix vf = conditioned_cm(joint_cm(out_A, out_B, setup.mode_choice), setup);
  return log_negativity(vf.V);
}

double swap_entanglement(const OutputResult& out_A, const OutputResult& out_B, const SwapSetup& setup) {
  return swap_entanglement(out_A.raw, out_B.raw, setup);
}

}  // namespace levito
