#pragma once

#include <cstddef>
#include <vector>

#include "lsv/density.hpp"
#include "lsv/map.hpp"

namespace lsv {

/// Piecewise-constant density on a uniform partition of Y, w.r.t. lambda~.
struct UlamDensity {
  double alpha = 0.0;
  std::size_t cells = 0;
  std::vector<double> values;
  int iterations = 0;
  double residual = 0.0;
  /// max_i |sum_j P_ij - 1| of the assembled stochastic matrix.
  double max_row_sum_error = 0.0;
  /// Number of return times treated cell by cell; the rest land in the first cell.
  std::size_t explicit_branches = 0;

  double cell_width() const noexcept { return 0.5 / static_cast<double>(cells); }
  double edge(std::size_t j) const noexcept { return 0.5 + static_cast<double>(j) * cell_width(); }
};

/// Ulam discretization of the induced map on `cells` equal cells of Y. Transition weights are
/// exact preimage-interval overlaps (endpoint images), not sampled. Branches whose cylinder
/// sits inside the first cell are aggregated through their summed weight function,
/// evaluated to return time k_max with the same tail closure as the Ruelle operator.
UlamDensity ulam_oracle(const MapParams& params, std::size_t cells, int max_iterations = 2000,
                        std::size_t k_max = 10000, double tol = 1e-13);

/// ||ulam - h||_{L^1(lambda~)} with Gauss quadrature inside each cell.
double l1_gap(const UlamDensity& ulam, const DensityApprox& density);

}  // namespace lsv
