#pragma once

#include <Eigen/Dense>

#include "levito/gaussian.hpp"
#include "levito/output_filter.hpp"

namespace levito {

struct SwapSetup {
  double T_r = 0.5;   // Bell-station beam splitter transmissivity, (0, 1)
  double eta1 = 1.0;  // efficiency of the detector measuring q- = sqrt(1-T) q_A - sqrt(T) q_B
  double eta2 = 1.0;  // efficiency of the detector measuring p+ = sqrt(T) p_A + sqrt(1-T) p_B
  FilterKind mode_choice = FilterKind::bs;

  void validate() const;
};

/// Two independent systems, modes ordered (tor_A, tor_B, cav_A, cav_B).
struct JointCM {
  Eigen::Matrix<double, 8, 8> V = Eigen::Matrix<double, 8, 8>::Zero();

  Eigen::Matrix4d E() const { return V.topLeftCorner<4, 4>(); }
  Eigen::Matrix4d O() const { return V.bottomRightCorner<4, 4>(); }
  Eigen::Matrix4d C() const { return V.topRightCorner<4, 4>(); }
};

struct LossChannel {
  double eta0 = 1.0;    // intrinsic detector efficiency
  double alpha0 = 0.0;  // dB/km
  double d = 0.0;       // km, one arm

  void validate() const;
};

/// eta0 * 10^(-alpha0 d / 10).
double detection_efficiency(const LossChannel& chan);

/// Place the (mechanics, chosen filtered mode) pair of each system into the
/// joint ordering. Cross-system blocks are zero.
JointCM joint_cm(const CovMatrix& out_A, const CovMatrix& out_B, FilterKind mode_choice);

/// Same from two 4x4 pair CMs (mechanics, optics) directly.
JointCM joint_cm_from_pairs(const Eigen::Matrix4d& pair_A, const Eigen::Matrix4d& pair_B);

/// Mechanical CM after the lossy dual-homodyne Bell measurement, evaluated by
/// the closed-form 2x2 measurement algebra. Detector noise enters as
/// (1 - eta) / (2 eta), the vacuum-1/2 form. Throws NumericalError when the
/// measured quadratures have a singular covariance.
CovMatrix conditioned_cm(const JointCM& joint, const SwapSetup& setup);

/// Same measurement built from phase-space operations: beam splitter on the
/// optical modes, a vacuum ancilla on an eta beam splitter per detector, and
/// sequential homodyne conditioning with a pseudo-inverse.
CovMatrix conditioned_cm_oracle(const JointCM& joint, const SwapSetup& setup);

/// log-negativity of conditioned_cm(joint_cm(out_A, out_B)).
double swap_entanglement(const CovMatrix& out_A, const CovMatrix& out_B, const SwapSetup& setup);

/// Uses the raw filtered modes of each system.
double swap_entanglement(const OutputResult& out_A, const OutputResult& out_B, const SwapSetup& setup);

/// Primitive Gaussian operations used by the oracle; exposed for tests.
namespace phase_space {

/// Symplectic matrix of a beam splitter acting on modes (i, j) of n:
/// a_i -> sqrt(T) a_i + sqrt(1-T) a_j, a_j -> -sqrt(1-T) a_i + sqrt(T) a_j.
Eigen::MatrixXd beam_splitter(int n_modes, int i, int j, double T);

/// Condition on an ideal homodyne of quadrature q (0 = x, 1 = p) of `mode`;
/// the measured mode is removed from the result.
Eigen::MatrixXd condition_homodyne(const Eigen::MatrixXd& V, int mode, int q);

/// Pure-loss channel on `mode` through an explicit vacuum ancilla.
Eigen::MatrixXd apply_loss(const Eigen::MatrixXd& V, int mode, double eta);

}  // namespace phase_space

}  // namespace levito
