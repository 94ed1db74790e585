#include <cmath>
#include <random>

#include "doctest.h"
#include "levito/bell_swap.hpp"
#include "levito/error.hpp"
#include "support.hpp"

using namespace levito;
namespace ts = testing_support;

namespace {

JointCM random_joint(std::mt19937_64& rng, double max_r = 1.0) {
  JointCM j;
  j.V = ts::random_cm(4, rng, max_r);
  return j;
}

// Gaussian conditioning written directly on the measured combinations
//   q- = sqrt(1-T) q_A - sqrt(T) q_B,  p+ = sqrt(T) p_A + sqrt(1-T) p_B,
// each with added noise (1 - eta) / (2 eta) after rescaling by 1/sqrt(eta).
Eigen::Matrix4d schur_route(const JointCM& j, const SwapSetup& s) {
  const double t = std::sqrt(s.T_r), r = std::sqrt(1.0 - s.T_r);
  Eigen::Matrix<double, 2, 4> L;
  L << r, 0, -t, 0,
       0, t, 0, r;
  Eigen::Matrix2d noise = Eigen::Matrix2d::Zero();
  noise(0, 0) = (1.0 - s.eta1) / (2.0 * s.eta1);
  noise(1, 1) = (1.0 - s.eta2) / (2.0 * s.eta2);
  const Eigen::Matrix2d M = L * j.O() * L.transpose() + noise;
  const Eigen::Matrix<double, 4, 2> X = j.C() * L.transpose();
  return j.E() - X * M.inverse() * X.transpose();
}

}  // namespace

TEST_CASE("closed form, phase-space and Schur routes agree (ideal detectors)") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const JointCM j = random_joint(rng);
    SwapSetup s;
    s.T_r = trial % 2 ? 0.5 : u(rng);
    const Eigen::MatrixXd closed = conditioned_cm(j, s).V;
    const Eigen::MatrixXd oracle = conditioned_cm_oracle(j, s).V;
    const Eigen::Matrix4d schur = schur_route(j, s);
    const double scale = j.E().cwiseAbs().maxCoeff();
    CHECK((closed - oracle).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    CHECK((closed - schur).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  }
}

TEST_CASE("closed form under detector loss") {
  std::mt19937_64 rng(202);
  for (double eta : {0.9, 0.8, 0.5}) {
    for (int trial = 0; trial < 100; ++trial) {
      const JointCM j = random_joint(rng);
      SwapSetup s;
      s.eta1 = eta;
      s.eta2 = trial % 3 ? eta : 1.0 - 0.3 * (1.0 - eta);
      const Eigen::MatrixXd closed = conditioned_cm(j, s).V;
      const double scale = j.E().cwiseAbs().maxCoeff();
      CHECK((closed - conditioned_cm_oracle(j, s).V).cwiseAbs().maxCoeff() <= 1e-9 * scale);
      CHECK((closed - schur_route(j, s)).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    }
  }
}

TEST_CASE("measurement never increases the mechanical covariance") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const JointCM j = random_joint(rng);
    SwapSetup s;
    s.eta1 = s.eta2 = 0.7;
    const Eigen::Matrix4d diff = j.E() - Eigen::Matrix4d(conditioned_cm(j, s).V);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(diff).eigenvalues().minCoeff() >= -1e-10);
    CHECK(ts::symplectic_spectrum(conditioned_cm(j, s).V).minCoeff() >= 0.5 - 1e-9);
  }
}

TEST_CASE("pure states stay pure under ideal detection") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd S = ts::random_symplectic(4, rng, 0.7);
    JointCM j;
    j.V = 0.5 * S * S.transpose();
    const Eigen::VectorXd nu = ts::symplectic_spectrum(conditioned_cm(j, {}).V);
    CHECK(nu.maxCoeff() == doctest::Approx(0.5).epsilon(1e-8));
  }
}

TEST_CASE("swapping two squeezed pairs entangles the far modes") {
  const Eigen::Matrix4d pair = ts::tmsv(0.8);
  const JointCM j = joint_cm_from_pairs(pair, pair);
  // The local modes start uncorrelated across systems.
  CHECK(j.V.block<2, 2>(0, 2).norm() == 0.0);
  CHECK(log_negativity(j.E()) == 0.0);
  const double en = log_negativity(Eigen::Matrix4d(conditioned_cm(j, {}).V));
  // ideal swap of two TMSV(r) leaves a TMSV with tanh r' = tanh^2 r
  CHECK(en == doctest::Approx(2.0 * std::atanh(std::pow(std::tanh(0.8), 2))).epsilon(1e-10));
  // A thermal product input carries nothing over.
  const JointCM idle = joint_cm_from_pairs(2.0 * Eigen::Matrix4d::Identity(), 2.0 * Eigen::Matrix4d::Identity());
  CHECK(log_negativity(Eigen::Matrix4d(conditioned_cm(idle, {}).V)) == 0.0);
  // Loss can only reduce it.
  SwapSetup lossy;
  lossy.eta1 = lossy.eta2 = 0.6;
  CHECK(log_negativity(Eigen::Matrix4d(conditioned_cm(j, lossy).V)) < en);
}

TEST_CASE("joint CM placement") {
  std::mt19937_64 rng(505);
  CovMatrix a{ts::random_cm(3, rng), {"mech", "tms", "bs"}};
  CovMatrix b{ts::random_cm(3, rng), {"mech", "tms", "bs"}};
  const JointCM j = joint_cm(a, b, FilterKind::bs);
  CHECK(j.V.block<2, 2>(0, 0) == a.V.block<2, 2>(0, 0));
  CHECK(j.V.block<2, 2>(2, 2) == b.V.block<2, 2>(0, 0));
  CHECK(j.V.block<2, 2>(4, 4) == a.V.block<2, 2>(4, 4));
  CHECK(j.V.block<2, 2>(0, 4) == a.V.block<2, 2>(0, 4));
  CHECK(j.V.block<2, 2>(6, 2) == b.V.block<2, 2>(4, 0));
  CHECK(j.V.block<2, 2>(0, 2).norm() == 0.0);
  CHECK(j.V.block<2, 2>(4, 6).norm() == 0.0);
  const JointCM t = joint_cm(a, b, FilterKind::tms);
  CHECK(t.V.block<2, 2>(4, 4) == a.V.block<2, 2>(2, 2));
  CHECK_THROWS_AS(joint_cm(CovMatrix{Eigen::MatrixXd::Identity(4, 4), {}}, b, FilterKind::bs), DomainError);
}

TEST_CASE("phase-space primitives") {
  using namespace phase_space;
  const Eigen::MatrixXd B = beam_splitter(3, 0, 2, 0.3);
  CHECK((B * ts::omega_form(3) * B.transpose() - ts::omega_form(3)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((B * B.transpose() - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-15);

  const Eigen::Matrix4d V = ts::tmsv(0.5);
  const Eigen::MatrixXd lossy = apply_loss(V, 1, 0.7);
  CHECK(lossy(2, 2) == doctest::Approx(0.7 * V(2, 2) + 0.15));
  CHECK(lossy(0, 2) == doctest::Approx(std::sqrt(0.7) * V(0, 2)));
  CHECK(lossy(0, 0) == V(0, 0));

  const Eigen::MatrixXd cond = condition_homodyne(V, 1, 0);
  CHECK(cond.rows() == 2);
  CHECK(cond(0, 0) == doctest::Approx(V(0, 0) - V(0, 2) * V(0, 2) / V(2, 2)));
  CHECK(cond(1, 1) == doctest::Approx(V(1, 1)));
}

TEST_CASE("detection efficiency of a fiber link") {
  CHECK(detection_efficiency({0.98, 0.14, 6.0}) == doctest::Approx(0.98 * std::pow(10.0, -0.084)));
  CHECK(detection_efficiency({1.0, 0.2, 0.0}) == 1.0);
  CHECK_THROWS_AS(detection_efficiency({1.2, 0.1, 1.0}), DomainError);
  CHECK_THROWS_AS(detection_efficiency({0.9, -0.1, 1.0}), DomainError);
}

TEST_CASE("setup validation") {
  std::mt19937_64 rng(606);
  const JointCM j = random_joint(rng);
  SwapSetup s;
  s.T_r = 1.0;
  CHECK_THROWS_AS(conditioned_cm(j, s), DomainError);
  s.T_r = 0.5;
  s.eta1 = 0.0;
  CHECK_THROWS_AS(conditioned_cm(j, s), DomainError);
}
