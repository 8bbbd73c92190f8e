#pragma once

// First-return structure of the LSV map over Y = [1/2, 1].
//
// For x in Y write z_j(x) for the j-th left-branch preimage of x (z_0 = x). The return-time
// cylinder {tau = k} is C_k = [(1+y_k)/2, (1+y_{k-1})/2] and its inverse branch is
//   F_k^{-1}(x) = (1 + z_{k-1}(x)) / 2,   G_k(x) = (1/2) prod_{j=1}^{k-1} 1 / f'(z_j(x)).

#include <cstddef>
#include <vector>

#include "lsv/grid.hpp"
#include "lsv/map.hpp"

namespace lsv {

enum class Exec { serial, parallel };

class InducedSystem {
 public:
  InducedSystem(const MapParams& params, std::size_t k_max);

  const MapParams& params() const noexcept { return params_; }
  std::size_t k_max() const noexcept { return k_max_; }
  const YSequence& y() const noexcept { return y_; }

  /// f_2^{-1} o f_1^{-(k-1)}; k beyond k_max is computed on demand.
  double inverse_branch(std::size_t k, double x) const;
  /// |d/dx F_k^{-1}(x)| by the chain rule along the backward orbit.
  double weight(std::size_t k, double x) const;
  /// F_k^{-1}(x) together with its weight, sharing one backward orbit.
  std::pair<double, double> inverse_and_weight(std::size_t k, double x) const;
  Interval cylinder(std::size_t k) const;

  /// Empirical D_1 with sup_x G_k(x) <= D_1 k^{-1-1/alpha}, measured over k in [10, k_max].
  double tail_bound_constant() const noexcept { return d1_; }
  /// Integral-test bound on sum_{k > k_max} ||G_k||_inf.
  double truncation_bound() const noexcept;
  /// Lebesgue measure of {tau > k_max} (= y_{k_max} / 2).
  double residual_mass() const noexcept { return 0.5 * y_.values[k_max_]; }

 private:
  MapParams params_;
  std::size_t k_max_;
  YSequence y_;
  double d1_ = 0.0;
};

/// Backward orbits of the grid nodes, frozen after construction.
///   z(i, j) = z_j(x_i) for j < k_max;  g(i, k) = G_k(x_i) for 1 <= k <= k_max.
/// Memory is 16 * nodes * k_max bytes.
class BranchCache {
 public:
  BranchCache(const InducedSystem& sys, const UniformGrid& grid, Exec exec = Exec::parallel);

  const InducedSystem& system() const noexcept { return *sys_; }
  const UniformGrid& grid() const noexcept { return grid_; }
  std::size_t k_max() const noexcept { return k_max_; }

  double z(std::size_t i, std::size_t j) const noexcept { return z_[i * k_max_ + j]; }
  double g(std::size_t i, std::size_t k) const noexcept { return g_[i * k_max_ + (k - 1)]; }
  /// F_k^{-1}(x_i).
  double preimage(std::size_t i, std::size_t k) const noexcept { return 0.5 * (1.0 + z(i, k - 1)); }
  /// Weight of the discarded branches k > k_max at node i, normalized so that its integral
  /// over Y equals the residual mass: G_K(x) y_K / (y_{K-1} - y_K).
  double tail_weight(std::size_t i) const noexcept { return tail_w_[i]; }
  /// Point at which the discarded branches are sampled: the G_k-weighted mean of their
  /// preimages, (1 + y_K/2)/2 to leading order.
  double tail_point() const noexcept { return tail_point_; }

  /// Largest |x_i - f^k(F_k^{-1}(x_i))| observed over k <= k_check.
  double round_trip_error(std::size_t k_check) const;

 private:
  const InducedSystem* sys_;
  UniformGrid grid_;
  std::size_t k_max_;
  std::vector<double> z_;
  std::vector<double> g_;
  std::vector<double> tail_w_;
  double tail_point_ = 0.5;
};

struct ConditionSpotCheck {
  double alpha = 0.0;
  double a1_max_weight = 0.0;          // sup_k ||G_k||, should not exceed 1/2
  double a2_sup_dlog = 0.0;            // sup |G'/G|
  double a3_sup_d2 = 0.0;              // sup |G''/G|
  double a4_sup_dalpha_inverse = 0.0;  // sup |d/dalpha F_k^{-1}|
  double a5_sup_dalpha_log = 0.0;      // sup |d/dalpha G / G|
  double a6_sup_dalpha_d1 = 0.0;       // sup |d/dalpha G' / G|
  /// Partial sums of sum_k ||G_k|| gamma_k with the proxy gamma_k = max(1, |dalpha log G_k|).
  double a7_partial_sum = 0.0;
  double a7_tail_increment = 0.0;      // contribution of the last half of the k-range
};

struct ConditionReport {
  std::vector<ConditionSpotCheck> rows;
  bool a1_holds = false;
  /// Ratio max/min of each supremum across the alpha list; finite means a uniform bound.
  double a2_spread = 0.0;
  double a3_spread = 0.0;
  bool a7_cauchy = false;
};

/// Numerical look at the distortion and parameter-regularity conditions for the LSV family.
/// Derivatives in x are propagated exactly along backward orbits; derivatives in alpha are
/// central differences with step h_alpha.
ConditionReport spot_check_conditions(const std::vector<double>& alphas, std::size_t k_max,
                                      std::size_t grid_points, double h_alpha = 1e-5);

/// Log-log slope of sup_x G_k(x) against k over log-spaced k in [k_lo, k_hi].
double weight_decay_slope(const InducedSystem& sys, std::size_t k_lo, std::size_t k_hi,
                          std::size_t grid_points = 33);

}  // namespace lsv
