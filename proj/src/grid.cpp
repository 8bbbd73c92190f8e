#include "lsv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsv/numerics.hpp"

namespace lsv {

UniformGrid::UniformGrid(double lo_, double hi_, std::size_t n_) : lo(lo_), hi(hi_), n(n_) {
  if (n < 4 || !(hi > lo)) throw std::invalid_argument("UniformGrid: need n >= 4 and hi > lo");
}

double UniformGrid::node(std::size_t i) const noexcept {
  if (i + 1 == n) return hi;
  return lo + static_cast<double>(i) * spacing();
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = node(i);
  return out;
}

namespace {

std::size_t cell_of(const UniformGrid& g, double x) noexcept {
  const double t = (x - g.lo) / g.spacing();
  if (!(t > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(t), g.n - 2);
}

std::size_t stencil_start(const UniformGrid& g, std::size_t cell) noexcept {
  const std::size_t s = cell == 0 ? 0 : cell - 1;
  return std::min(s, g.n - 4);
}

std::array<double, 4> lagrange4(double t) noexcept {
  return {-(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0, t * (t - 2.0) * (t - 3.0) / 2.0,
          -t * (t - 1.0) * (t - 3.0) / 2.0, t * (t - 1.0) * (t - 2.0) / 6.0};
}

Stencil stencil_in_cell(const UniformGrid& g, std::size_t cell, double x) noexcept {
  Stencil s;
  s.first = stencil_start(g, cell);
  s.weights = lagrange4((x - g.lo) / g.spacing() - static_cast<double>(s.first));
  return s;
}

constexpr double kGauss2 = 0.57735026918962576451;  // 1/sqrt(3)

}  // namespace

Stencil cubic_stencil(const UniformGrid& g, double x) noexcept {
  return stencil_in_cell(g, cell_of(g, x), x);
}

GridFunction::GridFunction(UniformGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n) throw std::invalid_argument("GridFunction: size mismatch");
}

double GridFunction::operator()(double x) const noexcept {
  const Stencil s = cubic_stencil(grid_, x);
  const double* v = values_.data() + s.first;
  return s.weights[0] * v[0] + s.weights[1] * v[1] + s.weights[2] * v[2] + s.weights[3] * v[3];
}

double GridFunction::integrate(double a, double b) const {
  return integrate_piecewise(grid_, a, b, [this](double x) { return (*this)(x); });
}

double integrate_piecewise(const UniformGrid& g, double a, double b,
                           const std::function<double(double)>& f) {
  if (b < a) return -integrate_piecewise(g, b, a, f);
  if (a < g.lo || b > g.hi) throw std::invalid_argument("integrate_piecewise: outside the grid");
  if (a == b) return 0.0;
  CompensatedSum sum;
  for (std::size_t c = cell_of(g, a); c + 1 < g.n; ++c) {
    const double lo = std::max(a, g.node(c));
    const double hi = std::min(b, g.node(c + 1));
    if (hi > lo) {
      const double mid = 0.5 * (lo + hi);
      const double half = 0.5 * (hi - lo);
      // Evaluate inside the cell so the right piece of the interpolant is used.
      sum.add(half * f(mid - half * kGauss2));
      sum.add(half * f(mid + half * kGauss2));
    }
    if (g.node(c + 1) >= b) break;
  }
  return sum.value();
}

std::vector<double> interpolant_quadrature_weights(const UniformGrid& g) {
  std::vector<double> w(g.n, 0.0);
  const double h = g.spacing();
  for (std::size_t c = 0; c + 1 < g.n; ++c) {
    const double xc = g.node(c);
    for (double sgn : {-1.0, 1.0}) {
      const double x = xc + 0.5 * h * (1.0 + sgn * kGauss2);
      const Stencil s = stencil_in_cell(g, c, x);
      for (int m = 0; m < 4; ++m) w[s.first + m] += 0.5 * h * s.weights[m];
    }
  }
  return w;
}

}  // namespace lsv
