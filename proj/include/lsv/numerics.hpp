#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lsv {

/// Neumaier (improved Kahan) summation. Order-dependent but deterministic.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  /// Adds a*b including the rounding error of the product.
  void add_product(double a, double b) noexcept {
    const double p = a * b;
    add(p);
    add(std::fma(a, b, -p));
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value();
}

/// Spacing between |x| and the next representable double of larger magnitude.
inline double ulp(double x) {
  const double a = std::abs(x);
  return std::nextafter(a, INFINITY) - a;
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms_residual = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y ~ intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// General linear least squares: columns of `design` (row-major, rows x cols) -> coefficients.
/// Uses column-pivoted QR. Returns empty when the design is rank deficient.
std::vector<double> least_squares(std::span<const double> design, std::size_t rows,
                                  std::size_t cols, std::span<const double> rhs);

/// Roughly `count` distinct integers between lo and hi (inclusive), log-spaced.
std::vector<std::int64_t> log_spaced_integers(std::int64_t lo, std::int64_t hi, std::size_t count);

/// Eight-point Gauss-Legendre rule mapped to [a, b]; nodes and weights appended to the outputs.
void gauss_legendre_8(double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace lsv
