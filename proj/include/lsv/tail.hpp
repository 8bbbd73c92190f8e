#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lsv/density.hpp"
#include "lsv/map.hpp"

namespace lsv {

/// nu~(tau > n) = nu~([1/2, (1+y_n)/2]), integrated exactly on the density interpolant.
double tail_mass(const DensityApprox& density, const YSequence& y, std::size_t n);

/// nu~(tau = k) as the lambda~-integral of h~ over the k-th cylinder.
double cylinder_mass(const DensityApprox& density, const YSequence& y, std::size_t k);

struct TailProfile {
  double alpha = 0.0;
  std::vector<std::int64_t> n_values;
  std::vector<double> tail_masses;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;

  /// Free fit: log T = log c - v log n + a log(n)/n + b/n [+ d n^{-1/alpha}].
  double fitted_c = 0.0;
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;  // rms in log space
  /// Same model with v pinned to 1/alpha; the coefficient used for tail extrapolation.
  double pinned_c = 0.0;
  std::vector<double> pinned_corrections;  // coefficients of log(n)/n, 1/n [, n^{-1/alpha}]
  double pinned_residual = 0.0;
  /// Plain two-parameter log-log line, kept for comparison.
  double raw_c = 0.0;
  double raw_exponent = 0.0;
  /// Slope of log|T / (c n^{-1/alpha}) - 1| against log n: the effective second-order exponent.
  double second_order_slope = 0.0;

  /// Model tail mass at n from the pinned fit.
  double model(double n) const;
};

/// Log-space least squares over `points` log-spaced n in [n_lo, n_hi].
/// Throws IllConditionedFit when fewer than 20 distinct n are available.
TailProfile fit_tail(const DensityApprox& density, const YSequence& y, std::int64_t n_lo = 100,
                     std::int64_t n_hi = 10000, std::size_t points = 40);

/// The tail constant predicted from the boundary value of h~ in two normalizations:
/// `stated` = h~(1/2) (1/2) / (alpha b)^{1/alpha}, as the expansion is usually written;
/// `measure` = h~(1/2) / (alpha b)^{1/alpha}, the leading term of nu~([1/2,(1+y_n)/2]) when
/// the integral is taken w.r.t. lambda~ = 2 Lebesgue.
struct TailConstantPrediction {
  double stated = 0.0;
  double measure = 0.0;
};
TailConstantPrediction predicted_tail_constant(const DensityApprox& density, const MapParams& p);

struct KacResult {
  double alpha = 0.0;
  std::size_t n_max = 0;
  double partial_sum = 0.0;  // sum_{k=0}^{n_max} T_k
  double tail_correction = 0.0;
  double total = 0.0;        // finite only for alpha < 1
  bool finite = false;
  /// For alpha >= 1: partial sums S(n) ~ A + B log n (alpha = 1) or ~ A n^{1-1/alpha}.
  double growth_coefficient = 0.0;
  double growth_exponent = 0.0;
};

/// sum_{k>=0} nu~(tau > k). For alpha < 1 the terms beyond n_max come from the pinned tail
/// model: explicit model terms up to 100 n_max, then c * hurwitz_zeta(1/alpha, .).
KacResult kac_sum(const DensityApprox& density, const YSequence& y, std::size_t n_max, const TailProfile& profile);

struct AbelCheck {
  double lhs = 0.0;  // sum_{k=1}^{N} k m_k + N T_N
  double rhs = 0.0;  // sum_{k=0}^{N-1} T_k
  double gap_ulps = 0.0;
};

/// Summation by parts with m_k = T_{k-1} - T_k carried exactly (as a double-double pair).
AbelCheck abel_identity(const std::vector<double>& tails);

/// sum_{k<=N} k nu~(C_k) + N T_N with cylinder masses integrated independently.
double kac_from_cylinders(const DensityApprox& density, const YSequence& y, std::size_t n_max);

struct X3Bounds {
  double minimal_d = 0.0;
  bool holds = false;
};

/// Smallest D with D^{-1} c n^{-v} <= T(n) <= D c n^{-v} over the profile's n-values.
X3Bounds check_x3_bounds(const TailProfile& profile, double c, double v);

}  // namespace lsv
