#include "levito/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "levito/error.hpp"

namespace levito::quad {
namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  double a, b;
  T value;
  double error;
};

template <typename T, typename F, typename Norm>
Panel<T> gk15(const F& f, double a, double b, const Norm& norm) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    T f1 = f(center - dx);
    T f2 = f(center + dx);
    T sum = f1 + f2;
    kronrod = kronrod + sum * kWgk[j];
    if (j % 2 == 1) gauss = gauss + sum * kWg[j / 2];
  }
  T value = kronrod * half;
  const double err = norm(T((kronrod - gauss) * half));
  return {a, b, std::move(value), err};
}

template <typename T, typename F, typename Zero, typename Norm>
std::pair<T, double> adapt(const F& f, std::vector<double> edges, const Options& opt, const Zero& zero,
                           const Norm& norm, std::size_t& evals) {
  auto cmp = [](const Panel<T>& l, const Panel<T>& r) { return l.error < r.error; };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> heap(cmp);

  T total = zero();
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    auto p = gk15<T>(f, edges[i], edges[i + 1], norm);
    evals += 15;
    total = total + p.value;
    total_err += p.error;
    heap.push(std::move(p));
  }

  std::size_t count = heap.size();
  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * norm(total)); };
  while (total_err > tolerance()) {
    if (count >= opt.max_subintervals) {
      throw QuadratureError("adaptive quadrature did not converge", total_err);
    }
    Panel<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("adaptive quadrature exhausted floating-point resolution", total_err);
    }
    auto left = gk15<T>(f, worst.a, mid, norm);
    auto right = gk15<T>(f, mid, worst.b, norm);
    evals += 30;
    total = total - worst.value + left.value + right.value;
    total_err += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++count;
  }

  // Re-sum to shed the accumulated cancellation from the running updates.
  T sum = zero();
  double err = 0.0;
  while (!heap.empty()) {
    sum = sum + heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {std::move(sum), err};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opt) {
  Result out;
  auto [v, e] = adapt<double>(
      f, {a, b}, opt, [] { return 0.0; }, [](double x) { return std::abs(x); }, out.evaluations);
  out.value = v;
  out.error = e;
  return out;
}

MatrixResult integrate_matrix(const std::function<Eigen::MatrixXd(double)>& f, double a, double b,
                              std::span<const double> breakpoints, const Options& opt) {
  std::vector<double> edges;
  edges.push_back(a);
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const Eigen::MatrixXd probe = f(0.5 * (a + b));
  const auto rows = probe.rows();
  const auto cols = probe.cols();

  MatrixResult out;
  out.evaluations = 1;
  auto [v, e] = adapt<Eigen::MatrixXd>(
      f, edges, opt, [&] { return Eigen::MatrixXd::Zero(rows, cols).eval(); },
      [](const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }, out.evaluations);
  out.value = std::move(v);
  out.error = e;
  return out;
}

}  // namespace levito::quad
