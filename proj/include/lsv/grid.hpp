#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lsv {

/// n equally spaced nodes on [lo, hi], both endpoints included.
struct UniformGrid {
  double lo = 0.5;
  double hi = 1.0;
  std::size_t n = 0;

  UniformGrid() = default;
  UniformGrid(double lo_, double hi_, std::size_t n_);

  double spacing() const noexcept { return (hi - lo) / static_cast<double>(n - 1); }
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;
};

/// Four-point Lagrange stencil: f(x) ~ sum_m weights[m] * f(node(first + m)).
/// The stencil is centred on the cell containing x and shifted inward at the ends,
/// so the interpolant is a piecewise cubic that is linear in the data.
struct Stencil {
  std::size_t first = 0;
  std::array<double, 4> weights{};
};

Stencil cubic_stencil(const UniformGrid& g, double x) noexcept;

/// Node values with a piecewise-cubic interpolant.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(UniformGrid grid, std::vector<double> values);

  const UniformGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(double x) const noexcept;
  /// Exact integral of the interpolant over [a, b] (Lebesgue), a and b inside the grid.
  double integrate(double a, double b) const;

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

/// Weights w with sum_i w_i f_i = exact Lebesgue integral of the interpolant over the grid.
std::vector<double> interpolant_quadrature_weights(const UniformGrid& g);

/// Evaluates `f` at the two Gauss points of every cell piece of [a, b] and sums. Exact for
/// the piecewise cubic, and fourth order for smooth integrands.
double integrate_piecewise(const UniformGrid& g, double a, double b,
                           const std::function<double(double)>& f);

}  // namespace lsv
