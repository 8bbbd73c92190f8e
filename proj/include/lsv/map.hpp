#pragma once

// Parametrized intermittent interval maps. The LSV (Pomeau-Manneville type) family
//
//   f(x) = x + 2^a x^(1+a)   on [0, 1/2]
//   f(x) = 2x - 1            on (1/2, 1]
//
// is the only instance shipped; the Branch description is general enough for any
// full-branch family with a neutral fixed point at 0.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace lsv {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Absolute tolerance guaranteed by the inverse-branch root finder.
inline constexpr double kInverseTolerance = 1e-14;

struct MapParams {
  double alpha = 1.0;
  /// Coefficient of the leading nonlinear term of the left branch.
  double b_alpha = 2.0;
  /// Exponent of the remainder in f'(x) = 1 + b(1+a)x^a + O(x^(a+eps)).
  double epsilon = 0.5;

  /// LSV instance: b = 2^alpha; epsilon defaults to alpha/2.
  static MapParams lsv(double alpha, std::optional<double> epsilon = std::nullopt);

  /// Throws DomainError unless alpha > 0, b > 0 and 0 < epsilon < alpha.
  void validate() const;
};

/// One monotone branch of a piecewise map. The inverse is defined on all of [0,1].
struct Branch {
  int index = 0;
  Interval domain;
  std::function<double(double)> forward;
  std::function<double(double)> derivative;
  std::function<double(double)> second_derivative;
  std::function<double(double)> third_derivative;
  std::function<double(double)> inverse;
};

/// Branch list {left (index 1), right (index 2)} of the LSV map.
std::vector<Branch> lsv_branches(const MapParams& p);

/// Full map on [0,1]. Throws DomainError outside [0,1].
double eval_map(const MapParams& p, double x);

/// x + b x^(1+a), evaluated as fma(b x^a, x, x) so tiny increments near 0 are not lost.
double left_branch(const MapParams& p, double x) noexcept;
double left_derivative(const MapParams& p, double x) noexcept;
double left_second_derivative(const MapParams& p, double x) noexcept;
double left_third_derivative(const MapParams& p, double x) noexcept;

/// Unique x in [0,1/2] with left_branch(x) = y. Bracketed Newton with bisection fallback.
double inverse_left_branch(const MapParams& p, double y);
inline double inverse_right_branch(double y) noexcept { return 0.5 * (1.0 + y); }

/// y_0 = 1, y_n = left inverse of y_{n-1}.
struct YSequence {
  std::vector<double> values;
  std::size_t n_max() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  double operator[](std::size_t n) const { return values.at(n); }
};

YSequence y_sequence(const MapParams& p, std::size_t n_max);

struct YAsymptoticsReport {
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  std::size_t points = 0;
  /// sup over the window of |y_n (a b n)^(1/a) - 1|.
  double max_scaled_deviation = 0.0;
  /// Log-log slope of the deviation against n; empty for a single-point window.
  std::optional<double> fitted_decay_exponent;
};

/// Compares y_n with the leading asymptotic (1/(a b n))^(1/a) over [n_lo, n_hi].
YAsymptoticsReport check_y_asymptotics(const YSequence& seq, const MapParams& p, std::size_t n_lo,
                                       std::size_t n_hi);

}  // namespace lsv
