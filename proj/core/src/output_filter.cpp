#include "levito/output_filter.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <cmath>
#include <vector>

#include "levito/constants.hpp"
#include "levito/error.hpp"
#include "levito/quadrature.hpp"

namespace levito {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Filter block [[R, -I], [I, R]] where R, I are the transforms of the real
// and imaginary parts of the time kernel.
Eigen::Matrix2cd filter_block(const FilterSpec& spec, double omega) {
  const cd fp = filter_spectrum(spec, omega);
  const cd fm = std::conj(filter_spectrum(spec, -omega));
  const cd re = 0.5 * (fp + fm);
  const cd im = (fp - fm) / (2.0 * kI);
  Eigen::Matrix2cd b;
  b << re, -im, im, re;
  return b;
}

Eigen::Matrix<cd, 6, 4> filtered_transfer(const LinearModel& model, double Gamma, double omega) {
  const Matrix64c S = transfer_S(omega, model);
  Eigen::Matrix<cd, 6, 4> Z;
  Z.topRows<2>() = S.topRows<2>();
  Z.middleRows<2>(2) = filter_block({FilterKind::tms, Gamma, model.omega_m}, omega) * S.middleRows<2>(2);
  Z.bottomRows<2>() = filter_block({FilterKind::bs, Gamma, model.omega_m}, omega) * S.bottomRows<2>();
  return Z;
}

}  // namespace

std::string_view to_string(FilterKind kind) { return kind == FilterKind::tms ? "tms" : "bs"; }

FilterKind parse_filter_kind(std::string_view name) {
  if (name == "tms") return FilterKind::tms;
  if (name == "bs") return FilterKind::bs;
  throw DomainError("unknown filter kind '" + std::string(name) + "' (expected tms or bs)");
}

void FilterSpec::validate() const {
  if (!(Gamma > 0.0) || !std::isfinite(Gamma)) throw DomainError("filter width must be positive");
  if (!std::isfinite(omega_center)) throw DomainError("filter centre must be finite");
}

std::complex<double> filter_spectrum(const FilterSpec& spec, double omega) {
  const double shift = spec.kind == FilterKind::tms ? spec.omega_center : -spec.omega_center;
  return std::sqrt(2.0 * spec.Gamma) / (spec.Gamma - kI * (omega + shift));
}

std::complex<double> filter_kernel(const FilterSpec& spec, double t) {
  if (t < 0.0) return {};
  const double shift = spec.kind == FilterKind::tms ? spec.omega_center : -spec.omega_center;
  return std::sqrt(2.0 * spec.Gamma) * std::exp(-spec.Gamma * t) * std::exp(kI * (shift * t));
}

std::complex<double> filter_overlap(double Gamma, double omega_m) { return Gamma / (Gamma - kI * omega_m); }

Eigen::Matrix4d orthonormalizing_map(double Gamma, double omega_m) {
  const cd c = filter_overlap(Gamma, omega_m);
  Eigen::Matrix2cd gram;
  gram << 1.0, c, std::conj(c), 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
  if (es.eigenvalues().minCoeff() <= 0.0) throw NumericalError("orthonormalizing_map: filtered modes are degenerate");
  const Eigen::Matrix2cd m = es.operatorInverseSqrt();
  // a'_i = m_ij a_j with a = (x + i p) / sqrt(2).
  Eigen::Matrix4d r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r.block<2, 2>(2 * i, 2 * j) << m(i, j).real(), -m(i, j).imag(), m(i, j).imag(), m(i, j).real();
    }
  }
  return r;
}

Matrix64c transfer_S(double omega, const LinearModel& model) {
  Eigen::Matrix4cd K = model.A.cast<cd>();
  K.diagonal().array() += kI * omega;
  Eigen::PartialPivLU<Eigen::Matrix4cd> lu(K);
  const Eigen::Matrix4cd M = lu.inverse();
  if (!M.allFinite()) throw NumericalError("transfer_S: i w + A is singular");

  const double sk = std::sqrt(model.kappa);
  Matrix64c S = Matrix64c::Zero();
  S.topRows<2>() = M.topRows<2>();
  Eigen::Matrix<cd, 2, 4> out = sk * M.bottomRows<2>();
  out(0, 2) += 1.0 / sk;
  out(1, 3) += 1.0 / sk;
  S.middleRows<2>(2) = out;
  S.bottomRows<2>() = out;
  return S;
}

Eigen::Matrix<double, 6, 6> output_spectral_density(const LinearModel& model, double Gamma, double omega) {
  const auto Z = filtered_transfer(model, Gamma, omega);
  const Eigen::Vector4d d = model.D.diagonal();
  return (Z * d.asDiagonal() * Z.adjoint()).real() / constants::kPi;
}

OutputResult output_cm(const LinearModel& model, double Gamma, const OutputOptions& opt) {
  FilterSpec{FilterKind::tms, Gamma, model.omega_m}.validate();
  if (!is_stable(model)) throw InstabilityError("output_cm: drift matrix is not Hurwitz");
  const CovMatrix intracavity = steady_state_cm(model);

  const double W = opt.window_scale *
                   (10.0 * std::max(model.kappa, std::abs(model.Delta) + model.omega_m) + 40.0 * Gamma);

  // Seeds for the adaptive split: normal-mode resonances and filter centres.
  std::vector<double> marks;
  Eigen::EigenSolver<Eigen::Matrix4d> es(model.A, false);
  const double ks[] = {0.0, 1.0, 3.0, 10.0, 30.0};
  auto add_peak = [&](double centre, double width) {
    for (double k : ks) {
      marks.push_back(centre + k * width);
      marks.push_back(centre - k * width);
    }
  };
  for (int i = 0; i < 4; ++i) add_peak(std::abs(es.eigenvalues()[i].imag()), std::abs(es.eigenvalues()[i].real()));
  add_peak(model.omega_m, Gamma);
  // [0, 1] covers [0, W] linearly, (1, 2) covers [W, inf) through w = W / (2 - t).
  std::vector<double> seeds;
  for (double w : marks) {
    if (w > 0.0 && w < W) seeds.push_back(w / W);
  }
  seeds.push_back(1.0);
  seeds.push_back(1.5);
  std::sort(seeds.begin(), seeds.end());

  auto mapped = [&](const Eigen::Vector<double, 6>& scale) {
    return [&model, Gamma, W, scale](double t) -> Eigen::MatrixXd {
      double omega;
      double jac;
      if (t <= 1.0) {
        omega = W * t;
        jac = W;
      } else {
        const double u = 2.0 - t;
        omega = W / u;
        jac = W / (u * u);
      }
      const Eigen::Matrix<double, 6, 6> s = output_spectral_density(model, Gamma, omega) * jac;
      return (scale.asDiagonal() * s * scale.asDiagonal()).eval();
    };
  };

  // Coarse pass for the variances, then a pass in correlation units so the
  // tolerance means the same thing for thermal mechanics and optical modes.
  OutputResult res;
  quad::Options coarse{0.0, 1e-3, opt.max_subintervals};
  auto first = quad::integrate_matrix(mapped(Eigen::Vector<double, 6>::Ones()), 0.0, 2.0, seeds, coarse);
  res.evaluations = first.evaluations;
  Eigen::Vector<double, 6> scale;
  for (int i = 0; i < 6; ++i) {
    const double v = first.value(i, i);
    if (!(v > 0.0)) throw NumericalError("output_cm: non-positive variance in coarse pass");
    scale(i) = 1.0 / std::sqrt(v);
  }
  quad::Options fine{0.0, opt.rel_tol, opt.max_subintervals};
  auto second = quad::integrate_matrix(mapped(scale), 0.0, 2.0, seeds, fine);
  res.evaluations += second.evaluations;
  res.quad_error = second.error;

  const Eigen::Vector<double, 6> inv = scale.cwiseInverse();
  res.raw.V = symmetrized(inv.asDiagonal() * second.value * inv.asDiagonal());
  res.raw.labels = {"mech", "tms", "bs"};
  Eigen::Matrix<double, 6, 6> ortho = Eigen::Matrix<double, 6, 6>::Identity();
  ortho.bottomRightCorner<4, 4>() = orthonormalizing_map(Gamma, model.omega_m);
  res.cm.V = symmetrized(ortho * res.raw.V * ortho.transpose());
  res.cm.labels = {"mech", "tms", "bs"};

  const Eigen::Matrix2d mech_in = intracavity.V.topLeftCorner<2, 2>();
  const Eigen::Matrix2d mech_out = res.cm.V.topLeftCorner<2, 2>();
  res.mech_mismatch = (mech_out - mech_in).cwiseAbs().maxCoeff() / mech_in.cwiseAbs().maxCoeff();
  const double mismatch_limit = std::max(1e-5, 10.0 * opt.rel_tol);
  if (res.mech_mismatch > mismatch_limit) {
    throw NumericalError("output_cm: mechanical block deviates from the intracavity solution by " +
                         std::to_string(res.mech_mismatch));
  }
  auto require_physical = [](const Eigen::MatrixXd& V, const char* what) {
    const double nu = symplectic_eigenvalues(V).minCoeff();
    if (nu < 0.5 - 1e-6) {
      throw NumericalError(std::string("output_cm: unphysical ") + what + " (symplectic eigenvalue " +
                           std::to_string(nu) + ")");
    }
  };
  require_physical(res.cm.V, "output CM");
  require_physical(pair_cm(res, OutputPair::tms_tor), "mech-tms pair");
  require_physical(pair_cm(res, OutputPair::bs_tor), "mech-bs pair");
  return res;
}

std::string_view to_string(OutputPair pair) {
  switch (pair) {
    case OutputPair::tms_tor: return "tms_tor";
    case OutputPair::bs_tor: return "bs_tor";
    case OutputPair::tms_bs: return "tms_bs";
  }
  return "?";
}

Eigen::Matrix4d pair_cm(const OutputResult& out, OutputPair pair) {
  std::array<int, 2> modes{};
  const CovMatrix* source = &out.raw;
  switch (pair) {
    case OutputPair::tms_tor: modes = {1, 0}; break;
    case OutputPair::bs_tor: modes = {2, 0}; break;
    case OutputPair::tms_bs:
      modes = {1, 2};
      source = &out.cm;
      break;
  }
  return select_modes(*source, modes).V;
}

double pair_entanglement(const OutputResult& out, OutputPair pair) { return log_negativity(pair_cm(out, pair)); }

}  // namespace levito
