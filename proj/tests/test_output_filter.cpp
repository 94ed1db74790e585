#include <cmath>
#include <complex>

#include "doctest.h"
#include "levito/error.hpp"
#include "levito/output_filter.hpp"
#include "support.hpp"

using namespace levito;
using cd = std::complex<double>;

namespace {

// Time-domain route to the raw (mech, tms, bs) CM. The filtered modes obey
//   d/dt a_f = (-Gamma + i s) a_f + sqrt(2 Gamma) a_out,  s = +w_m (tms), -w_m (bs),
// with a_out = sqrt(kappa) a - a_in, so the whole system is one linear SDE
// driven by the intracavity noise and the Lyapunov equation gives its CM.
Eigen::Matrix<double, 6, 6> augmented_oracle(const LinearModel& m, double Gamma) {
  Eigen::Matrix<double, 8, 8> A = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 4> B = Eigen::Matrix<double, 8, 4>::Zero();
  A.topLeftCorner<4, 4>() = m.A;
  B.topRows<4>().setIdentity();
  const double sk = std::sqrt(m.kappa), sg = std::sqrt(2.0 * Gamma);
  const double shift[2] = {m.omega_m, -m.omega_m};
  for (int f = 0; f < 2; ++f) {
    const int x = 4 + 2 * f, p = x + 1;
    A(x, x) = A(p, p) = -Gamma;
    A(x, p) = -shift[f];
    A(p, x) = shift[f];
    A(x, 2) = sg * sk;
    A(p, 3) = sg * sk;
    B(x, 2) = -sg / sk;
    B(p, 3) = -sg / sk;
  }
  const Eigen::MatrixXd Q = B * m.D * B.transpose();
  const Eigen::MatrixXd V = testing_support::lyapunov_kron(A, Q);
  const int keep[6] = {0, 1, 4, 5, 6, 7};
  Eigen::Matrix<double, 6, 6> out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out(i, j) = V(keep[i], keep[j]);
  return out;
}

double correlation_distance(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  double worst = 0.0;
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j)
      worst = std::max(worst, std::abs(X(i, j) - Y(i, j)) / std::sqrt(Y(i, i) * Y(j, j)));
  return worst;
}

}  // namespace

TEST_CASE("filter spectrum is the Fourier transform of the kernel") {
  for (auto kind : {FilterKind::tms, FilterKind::bs}) {
    const FilterSpec spec{kind, 0.7, 3.0};
    for (double w : {-5.0, -3.0, -0.4, 0.0, 2.0, 3.0, 8.0}) {
      auto integrand = [&](double t) { return filter_kernel(spec, t) * std::exp(cd(0.0, w * t)); };
      const cd numeric = testing_support::simpson(integrand, 0.0, 60.0 / spec.Gamma, 40000);
      CAPTURE(w);
      CHECK(std::abs(numeric - filter_spectrum(spec, w)) < 1e-9);
    }
    CHECK(filter_kernel(spec, -1e-3) == cd(0.0, 0.0));
  }
  // tms peaks on the Stokes side, bs on the anti-Stokes side
  CHECK(std::abs(filter_spectrum({FilterKind::tms, 0.1, 2.0}, -2.0)) ==
        doctest::Approx(std::sqrt(2.0 / 0.1)));
  CHECK(std::abs(filter_spectrum({FilterKind::bs, 0.1, 2.0}, 2.0)) == doctest::Approx(std::sqrt(2.0 / 0.1)));
}

TEST_CASE("kernels have unit norm in both domains") {
  const FilterSpec spec{FilterKind::bs, 0.4, 1.0};
  auto time = [&](double t) { return std::norm(filter_kernel(spec, t)); };
  CHECK(testing_support::simpson(time, 0.0, 100.0, 20000) == doctest::Approx(1.0).epsilon(1e-10));
  // w = tan(theta) over (-pi/2, pi/2)
  auto freq = [&](double th) {
    if (std::abs(th) >= M_PI / 2) return 2.0 * spec.Gamma;  // |f|^2 ~ 2 Gamma / w^2
    const double c = std::cos(th);
    return std::norm(filter_spectrum(spec, std::tan(th))) / (c * c);
  };
  CHECK(testing_support::simpson(freq, -M_PI / 2, M_PI / 2, 200000) / (2.0 * M_PI) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("kernel overlap") {
  const double Gamma = 0.3, wm = 1.1;
  const FilterSpec t{FilterKind::tms, Gamma, wm}, b{FilterKind::bs, Gamma, wm};
  auto integrand = [&](double x) { return filter_kernel(t, x) * std::conj(filter_kernel(b, x)); };
  const cd numeric = testing_support::simpson(integrand, 0.0, 150.0, 60000);
  CHECK(std::abs(numeric - filter_overlap(Gamma, wm)) < 1e-10);
  CHECK(std::abs(filter_overlap(1e-3, 1.0)) < 1.1e-3);
}

TEST_CASE("orthonormalizing map is symplectic and whitens the overlapping vacuum") {
  const double Gamma = 0.8, wm = 1.0;
  const cd c = filter_overlap(Gamma, wm);
  // vacuum covariances of two modes with [a_t, a_b^dag] = c
  Eigen::Matrix4d V = 0.5 * Eigen::Matrix4d::Identity();
  Eigen::Matrix2d cross;
  cross << c.real(), -c.imag(), c.imag(), c.real();
  V.topRightCorner<2, 2>() = 0.5 * cross;
  V.bottomLeftCorner<2, 2>() = 0.5 * cross.transpose();
  const Eigen::Matrix4d M = orthonormalizing_map(Gamma, wm);
  CHECK((M * V * M.transpose() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((orthonormalizing_map(1e-12, 1.0) - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("transfer matrix is real in the time domain") {
  const auto m = build_model(1.0, 0.4, 0.01, 3.0, 1.0, 5.0);
  for (double w : {0.0, 0.3, 1.0, 7.0}) {
    const Matrix64c Sp = transfer_S(w, m), Sm = transfer_S(-w, m);
    CHECK((Sm - Sp.conjugate()).cwiseAbs().maxCoeff() < 1e-14);
  }
  const Matrix64c S0 = transfer_S(0.0, m);
  CHECK((S0.middleRows<2>(2) - S0.bottomRows<2>()).norm() == 0.0);
}

TEST_CASE("raw output CM matches the augmented Lyapunov oracle") {
  struct Case {
    double g, gamma, nbar, Delta, kappa, Gamma;
  };
  const Case cases[] = {
      {0.3, 0.01, 10.0, 1.0, 4.0, 0.3},
      {0.05, 0.02, 0.0, 1.0, 5.0, 2.0},
      {0.4, 3e-3, 5e4, 1.0, 5.0, 1.0},
      {0.2, 0.05, 1.0, 0.6, 1.5, 0.05},
      {0.4, 3e-9, 4.9e7, 1.0, 5.0, 1.17},
  };
  OutputOptions opt;
  opt.rel_tol = 1e-8;
  for (const auto& c : cases) {
    const auto m = build_model(1.0, c.g, c.gamma, c.nbar, c.Delta, c.kappa);
    const OutputResult out = output_cm(m, c.Gamma, opt);
    const auto oracle = augmented_oracle(m, c.Gamma);
    CAPTURE(c.g);
    CAPTURE(c.Gamma);
    CHECK(correlation_distance(out.raw.V, oracle) < 1e-6);
    // the raw filtered pair overlaps; once orthonormalized it is a physical state
    const Eigen::Matrix4d M = orthonormalizing_map(c.Gamma, 1.0);
    const Eigen::Matrix4d optical = M * oracle.bottomRightCorner<4, 4>() * M.transpose();
    CHECK(testing_support::symplectic_spectrum(optical).minCoeff() >= 0.5 - 1e-9);
  }
}

TEST_CASE("zero coupling gives the multimode vacuum") {
  const auto m = build_model(1.0, 0.0, 0.01, 0.0, 1.0, 5.0);
  for (double Gamma : {0.01, 0.3, 3.0}) {
    const OutputResult out = output_cm(m, Gamma);
    CHECK((out.cm.V - 0.5 * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-8);
    // the raw filtered modes keep their kernel overlap
    const cd c = filter_overlap(Gamma, 1.0);
    CHECK(out.raw.V(2, 4) == doctest::Approx(0.5 * c.real()).epsilon(1e-7));
    CHECK(out.raw.V(3, 4) == doctest::Approx(0.5 * c.imag()).epsilon(1e-7));
  }
}

TEST_CASE("mechanical block agrees with the intracavity state") {
  const auto m = build_model(1.0, 0.4, 3e-3, 4.9e7, 1.0, 5.0);
  const OutputResult out = output_cm(m, 0.5);
  CHECK(out.mech_mismatch < 1e-5);
  const CovMatrix in = steady_state_cm(m);
  CHECK((out.cm.V.topLeftCorner<2, 2>() - in.V.topLeftCorner<2, 2>()).cwiseAbs().maxCoeff() <
        1e-5 * in.V(0, 0));
}

TEST_CASE("window and tolerance refinement") {
  const auto m = build_model(1.0, 0.4, 3e-3, 100.0, 1.0, 5.0);
  OutputOptions base;
  OutputOptions fine;
  fine.window_scale = 2.0;
  fine.rel_tol = 0.5 * base.rel_tol;
  const OutputResult a = output_cm(m, 0.8, base), b = output_cm(m, 0.8, fine);
  CHECK(correlation_distance(a.cm.V, b.cm.V) < 1e-6);
}

TEST_CASE("pair CMs and their entanglement") {
  const auto m = build_model(1.0, 0.4, 3e-3, 10.0, 1.0, 5.0);
  const OutputResult out = output_cm(m, 1.0);
  for (auto pair : {OutputPair::tms_tor, OutputPair::bs_tor, OutputPair::tms_bs}) {
    const Eigen::Matrix4d V = pair_cm(out, pair);
    CAPTURE(to_string(pair));
    CHECK(testing_support::symplectic_spectrum(V).minCoeff() >= 0.5 - 1e-7);
    CHECK(pair_entanglement(out, pair) >= 0.0);
  }
  // mech first in the raw CM, filtered mode first in the pair
  CHECK(pair_cm(out, OutputPair::tms_tor)(2, 2) == out.raw.V(0, 0));
  CHECK(pair_cm(out, OutputPair::tms_bs)(0, 0) == out.cm.V(2, 2));
}

TEST_CASE("argument checks") {
  CHECK(parse_filter_kind("bs") == FilterKind::bs);
  CHECK_THROWS_AS(parse_filter_kind("notch"), DomainError);
  const auto stable = build_model(1.0, 0.1, 0.01, 1.0, 1.0, 5.0);
  CHECK_THROWS_AS(output_cm(stable, 0.0), DomainError);
  CHECK_THROWS_AS(output_cm(stable, -1.0), DomainError);
  const auto unstable = build_model(1.0, 0.8, 0.01, 1.0, -1.0, 1.0);
  CHECK_THROWS_AS(output_cm(unstable, 1.0), InstabilityError);
}
