// Quick invariant checks behind `levitosim check`. The full suites live in
// tests/; this is the subset that runs in a second or two.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "levito/bell_swap.hpp"
#include "levito/dynamics.hpp"
#include "levito/gaussian.hpp"
#include "levito/output_filter.hpp"

namespace {

struct Tally {
  bool verbose;
  int failed = 0;
  int total = 0;

  void report(const std::string& name, bool ok, double value) {
    ++total;
    if (!ok) ++failed;
    if (verbose || !ok) std::printf("%s  %-48s %.3e\n", ok ? "ok  " : "FAIL", name.c_str(), value);
  }
};

Eigen::MatrixXd random_physical(std::mt19937_64& rng, int n) {
  // S diag(nu) S^T with a random symplectic S built from beam splitters and
  // single-mode squeezers.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) V.block<2, 2>(2 * k, 2 * k) = (0.5 + 2.0 * u(rng)) * Eigen::Matrix2d::Identity();
  for (int layer = 0; layer < 3; ++layer) {
    for (int k = 0; k < n; ++k) {
      Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n, 2 * n);
      const double r = 0.8 * (u(rng) - 0.5);
      const double th = 6.283185307179586 * u(rng);
      Eigen::Matrix2d rot;
      rot << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
      S.block<2, 2>(2 * k, 2 * k) = Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal() * rot;
      V = S * V * S.transpose();
    }
    for (int k = 0; k + 1 < n; ++k) {
      const Eigen::MatrixXd B = levito::phase_space::beam_splitter(n, k, k + 1, u(rng));
      V = B * V * B.transpose();
    }
  }
  return 0.5 * (V + V.transpose());
}

}  // namespace

int run_check_suite(unsigned seed, bool verbose) {
  using namespace levito;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Tally t{verbose};

  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto m = build_model(1.0, 0.3 * u(rng), 0.05 + u(rng), 3.0 * u(rng), 2.0 * u(rng), 0.5 + 3.0 * u(rng));
    if (!is_stable(m)) continue;
    double res = 0.0;
    (void)steady_state_cm(m, &res);
    worst = std::max(worst, res);
  }
  t.report("lyapunov residual (random models)", worst <= 1e-12, worst);

  {
    const auto m = build_model(1.0, 0.0, 0.1, 0.0, 1.0, 2.0);
    const auto out = output_cm(m, 0.2);
    const double dev = (out.cm.V - 0.5 * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff();
    t.report("decoupled output is vacuum", dev <= 1e-8, dev);
  }

  {
    const auto m = build_model(1.0, 0.1, 0.01, 2.0, 1.0, 3.0);
    const auto out = output_cm(m, 0.05);
    t.report("mechanical block equals intracavity block", out.mech_mismatch <= 1e-5, out.mech_mismatch);
    t.report("output CM is physical", symplectic_eigenvalues(out.cm.V).minCoeff() >= 0.5 - 1e-9,
             symplectic_eigenvalues(out.cm.V).minCoeff());
  }

  worst = 0.0;
  for (double r = 0.1; r <= 2.0 + 1e-9; r += 0.1) {
    Eigen::Matrix4d V = Eigen::Matrix4d::Zero();
    V.diagonal().setConstant(0.5 * std::cosh(2 * r));
    V(0, 2) = V(2, 0) = 0.5 * std::sinh(2 * r);
    V(1, 3) = V(3, 1) = -0.5 * std::sinh(2 * r);
    worst = std::max(worst, std::abs(log_negativity(V) - 2 * r));
  }
  t.report("two-mode squeezed vacuum En = 2r", worst <= 1e-9, worst);

  worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    JointCM j;
    j.V = random_physical(rng, 4);
    SwapSetup s;
    s.T_r = 0.2 + 0.6 * u(rng);
    s.eta1 = 0.5 + 0.5 * u(rng);
    s.eta2 = 0.5 + 0.5 * u(rng);
    const double d = (conditioned_cm(j, s).V - conditioned_cm_oracle(j, s).V).cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
  }
  t.report("Bell measurement: closed form vs phase-space route", worst <= 1e-9, worst);

  std::printf("%d/%d checks passed\n", t.total - t.failed, t.total);
  return t.failed;
}
