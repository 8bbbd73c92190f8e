#pragma once

#include <span>
#include <string>
#include <vector>

#include "lsv/grid.hpp"
#include "lsv/induced.hpp"

namespace lsv {

enum class NormConvention { wrt_lambda_tilde, wrt_lebesgue };

std::string to_string(NormConvention c);

/// The one place where the two density conventions meet. The induced density h~ is taken
/// w.r.t. lambda~ = 2 Lebesgue on Y; the Lebesgue density of the same measure is rho = 2 h~.
inline double rho_from_h_tilde(double h_tilde) noexcept { return 2.0 * h_tilde; }
inline double h_tilde_from_rho(double rho) noexcept { return 0.5 * rho; }

/// Grid density on Y with solver metadata.
struct DensityApprox {
  double alpha = 0.0;
  UniformGrid grid;
  std::vector<double> values;
  NormConvention norm = NormConvention::wrt_lambda_tilde;
  double residual = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  int iterations = 0;
  std::vector<double> residual_trace;
  std::size_t k_max = 0;
  double truncation_bound = 0.0;

  GridFunction function() const { return GridFunction(grid, values); }
  /// h~(1/2), the node at the left end of Y.
  double boundary_value() const { return values.front(); }
};

/// Integral over [a,b] subset Y w.r.t. lambda~ of the interpolated grid function.
double lambda_tilde_integral(const GridFunction& f, double a = 0.5, double b = 1.0);

/// Collocation matrix of the Ruelle operator on the cache grid:
///   (P u)(x_i) = sum_{k <= K} G_k(x_i) u(F_k^{-1} x_i) + tail_i u(tail point),
/// with u read off-grid through the piecewise-cubic interpolant.
class RuelleOperator {
 public:
  explicit RuelleOperator(const BranchCache& cache, Exec exec = Exec::parallel);

  std::size_t size() const noexcept { return n_; }
  const UniformGrid& grid() const noexcept { return grid_; }
  double entry(std::size_t i, std::size_t j) const noexcept { return m_[i * n_ + j]; }

  std::vector<double> apply(std::span<const double> u, Exec exec = Exec::parallel) const;
  /// The tail contribution on its own.
  std::vector<double> tail_part(std::span<const double> u) const;
  double truncation_bound() const noexcept { return truncation_bound_; }

 private:
  UniformGrid grid_;
  std::size_t n_;
  std::vector<double> m_;
  std::vector<double> tail_;
  Stencil tail_stencil_;
  double truncation_bound_;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 1000;
};

/// Power iteration with lambda~-renormalization, starting from u0 (default u0 = 1).
/// Throws NonConvergence with the residual trace if max_iter is reached.
DensityApprox solve_density(const RuelleOperator& op, double alpha, std::size_t k_max,
                            const SolverOptions& opt = {}, std::span<const double> u0 = {});

/// Starting vector 2(x - 1/2) + 0.5, used for the independence-of-start check.
std::vector<double> alternate_start(const UniformGrid& g);

double sup_distance(std::span<const double> a, std::span<const double> b);

/// Convenience: builds system, cache and operator and solves. Keeps all three alive.
struct DensityPipeline {
  InducedSystem system;
  BranchCache cache;
  RuelleOperator op;
  DensityApprox density;

  DensityPipeline(double alpha, std::size_t grid_size = 1024, std::size_t k_max = 10000,
                  const SolverOptions& opt = {});
};

}  // namespace lsv
