#include "lsv/numerics.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

namespace lsv {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need at least two paired points");
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  f.points = x.size();
  return f;
}

std::vector<double> least_squares(std::span<const double> design, std::size_t rows,
                                  std::size_t cols, std::span<const double> rhs) {
  if (design.size() != rows * cols || rhs.size() != rows || rows < cols)
    throw std::invalid_argument("least_squares: shape mismatch");
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = design[r * cols + c];
    b(r) = rhs[r];
  }
  // Column scaling keeps the rank decision independent of basis magnitudes.
  Eigen::VectorXd scale = a.colwise().norm();
  for (std::size_t c = 0; c < cols; ++c) {
    if (scale(c) == 0.0) return {};
    a.col(c) /= scale(c);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (static_cast<std::size_t>(qr.rank()) < cols) return {};
  Eigen::VectorXd sol = qr.solve(b);
  std::vector<double> out(cols);
  for (std::size_t c = 0; c < cols; ++c) out[c] = sol(c) / scale(c);
  return out;
}

std::vector<std::int64_t> log_spaced_integers(std::int64_t lo, std::int64_t hi, std::size_t count) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("log_spaced_integers: need 1 <= lo <= hi");
  std::vector<std::int64_t> out;
  if (count <= 1 || lo == hi) {
    out.push_back(lo);
    if (hi != lo && count > 1) out.push_back(hi);
    return out;
  }
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    auto v = static_cast<std::int64_t>(std::llround(std::exp(t)));
    v = std::clamp(v, lo, hi);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

void gauss_legendre_8(double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  using rule = boost::math::quadrature::gauss<double, 8>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      nodes.push_back(mid);
      weights.push_back(half * w[i]);
      continue;
    }
    nodes.push_back(mid - half * x[i]);
    weights.push_back(half * w[i]);
    nodes.push_back(mid + half * x[i]);
    weights.push_back(half * w[i]);
  }
}

}  // namespace lsv
