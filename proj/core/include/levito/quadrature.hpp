#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace levito::quad {

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  std::size_t max_subintervals = 2000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
/// Throws QuadratureError when the tolerance cannot be met within
/// `max_subintervals` bisections.
Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

struct MatrixResult {
  Eigen::MatrixXd value;
  double error = 0.0;  // max-entry error estimate
  std::size_t evaluations = 0;
};

/// Matrix-valued version. All entries share one subdivision; error is
/// measured in the max-abs entry norm. `breakpoints` must be sorted and lie in
/// [a, b]; they seed the initial panels.
MatrixResult integrate_matrix(const std::function<Eigen::MatrixXd(double)>& f, double a, double b,
                              std::span<const double> breakpoints, const Options& opt = {});

}  // namespace levito::quad
