#include "lsv/tail.hpp"

#include <algorithm>
#include <cmath>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"
#include "lsv/zeta.hpp"

namespace lsv {

double tail_mass(const DensityApprox& density, const YSequence& y, std::size_t n) {
  if (n > y.n_max()) throw DomainError("tail_mass: n beyond the y-sequence");
  if (n == 0) return 1.0;
  return lambda_tilde_integral(density.function(), 0.5, inverse_right_branch(y.values[n]));
}

double cylinder_mass(const DensityApprox& density, const YSequence& y, std::size_t k) {
  if (k < 1 || k > y.n_max()) throw DomainError("cylinder_mass: k out of range");
  return lambda_tilde_integral(density.function(), inverse_right_branch(y.values[k]),
                               inverse_right_branch(y.values[k - 1]));
}

namespace {

bool uses_power_correction(double alpha) { return alpha >= 1.1; }

std::vector<double> correction_terms(double n, double alpha) {
  std::vector<double> t = {std::log(n) / n, 1.0 / n};
  if (uses_power_correction(alpha)) t.push_back(std::pow(n, -1.0 / alpha));
  return t;
}

}  // namespace

double TailProfile::model(double n) const {
  const auto t = correction_terms(n, alpha);
  double e = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) e += pinned_corrections[i] * t[i];
  return pinned_c * std::pow(n, -1.0 / alpha) * std::exp(e);
}

TailProfile fit_tail(const DensityApprox& density, const YSequence& y, std::int64_t n_lo, std::int64_t n_hi,
                     std::size_t points) {
  if (n_lo < 1 || n_hi <= n_lo || static_cast<std::size_t>(n_hi) > y.n_max())
    throw IllConditionedFit("fit_tail: empty or out-of-range window");
  TailProfile prof;
  prof.alpha = density.alpha;
  prof.window_lo = n_lo;
  prof.window_hi = n_hi;
  prof.n_values = log_spaced_integers(n_lo, n_hi, points);
  if (prof.n_values.size() < 20) throw IllConditionedFit("fit_tail: fewer than 20 distinct points in the window");

  const GridFunction h = density.function();
  std::vector<double> ln, lt;
  for (auto n : prof.n_values) {
    const double t = lambda_tilde_integral(h, 0.5, inverse_right_branch(y.values[static_cast<std::size_t>(n)]));
    prof.tail_masses.push_back(t);
    ln.push_back(std::log(static_cast<double>(n)));
    lt.push_back(std::log(t));
  }
  const std::size_t rows = ln.size();
  const double a = density.alpha;
  const std::size_t nc = correction_terms(2.0, a).size();

  // Free exponent.
  {
    const std::size_t cols = 2 + nc;
    std::vector<double> design;
    for (std::size_t r = 0; r < rows; ++r) {
      design.push_back(1.0);
      design.push_back(ln[r]);
      for (double t : correction_terms(std::exp(ln[r]), a)) design.push_back(t);
    }
    const auto coef = least_squares(design, rows, cols, lt);
    if (coef.empty()) throw IllConditionedFit("fit_tail: rank-deficient design");
    prof.fitted_c = std::exp(coef[0]);
    prof.fitted_exponent = -coef[1];
    double ss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      double m = 0.0;
      for (std::size_t c = 0; c < cols; ++c) m += design[r * cols + c] * coef[c];
      ss += (lt[r] - m) * (lt[r] - m);
    }
    prof.fit_residual = std::sqrt(ss / static_cast<double>(rows));
  }
  // Exponent pinned at 1/alpha.
  {
    const std::size_t cols = 1 + nc;
    std::vector<double> design, rhs;
    for (std::size_t r = 0; r < rows; ++r) {
      design.push_back(1.0);
      for (double t : correction_terms(std::exp(ln[r]), a)) design.push_back(t);
      rhs.push_back(lt[r] + ln[r] / a);
    }
    const auto coef = least_squares(design, rows, cols, rhs);
    if (coef.empty()) throw IllConditionedFit("fit_tail: rank-deficient pinned design");
    prof.pinned_c = std::exp(coef[0]);
    prof.pinned_corrections.assign(coef.begin() + 1, coef.end());
    double ss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      double m = 0.0;
      for (std::size_t c = 0; c < cols; ++c) m += design[r * cols + c] * coef[c];
      ss += (rhs[r] - m) * (rhs[r] - m);
    }
    prof.pinned_residual = std::sqrt(ss / static_cast<double>(rows));
  }
  const LineFit raw = fit_line(ln, lt);
  prof.raw_c = std::exp(raw.intercept);
  prof.raw_exponent = -raw.slope;

  std::vector<double> sx, sy;
  for (std::size_t r = 0; r < rows; ++r) {
    const double rel = std::abs(prof.tail_masses[r] / (prof.pinned_c * std::exp(-ln[r] / a)) - 1.0);
    if (rel > 0.0) {
      sx.push_back(ln[r]);
      sy.push_back(std::log(rel));
    }
  }
  if (sx.size() >= 2) prof.second_order_slope = fit_line(sx, sy).slope;
  return prof;
}

TailConstantPrediction predicted_tail_constant(const DensityApprox& density, const MapParams& p) {
  const double scale = std::pow(p.alpha * p.b_alpha, 1.0 / p.alpha);
  // |(f_2^{-1})'(0)| = 1/2
  return {density.boundary_value() * 0.5 / scale, density.boundary_value() / scale};
}

KacResult kac_sum(const DensityApprox& density, const YSequence& y, std::size_t n_max, const TailProfile& profile) {
  if (n_max < 1 || n_max > y.n_max()) throw DomainError("kac_sum: n_max beyond the y-sequence");
  KacResult r;
  r.alpha = density.alpha;
  r.n_max = n_max;
  const GridFunction h = density.function();
  CompensatedSum s;
  s.add(1.0);
  std::vector<double> lx, ls;
  const auto marks = log_spaced_integers(std::max<std::int64_t>(10, static_cast<std::int64_t>(n_max / 100)),
                                          static_cast<std::int64_t>(n_max), 40);
  std::size_t next_mark = 0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    s.add(lambda_tilde_integral(h, 0.5, inverse_right_branch(y.values[k])));
    if (next_mark < marks.size() && static_cast<std::size_t>(marks[next_mark]) == k) {
      lx.push_back(std::log(static_cast<double>(k)));
      ls.push_back(s.value());
      ++next_mark;
    }
  }
  r.partial_sum = s.value();
  const double a = density.alpha;
  if (a < 1.0) {
    const double v = 1.0 / a;
    const std::size_t m_hi = 100 * n_max;
    CompensatedSum corr;
    for (std::size_t k = n_max + 1; k <= m_hi; ++k) {
      const double kd = static_cast<double>(k);
      corr.add(profile.model(kd) - profile.pinned_c * std::pow(kd, -v));
    }
    r.tail_correction = corr.value() + profile.pinned_c * hurwitz_zeta(v, static_cast<double>(n_max + 1));
    r.total = r.partial_sum + r.tail_correction;
    r.finite = true;
  } else if (lx.size() >= 2) {
    if (a == 1.0) {
      const LineFit f = fit_line(lx, ls);
      r.growth_coefficient = f.slope;
      r.growth_exponent = 0.0;
    } else {
      // S(n) ~ S_inf - C n^{1-1/alpha} is bounded for alpha > 1 as well; report the increments.
      std::vector<double> dx, dy;
      for (std::size_t i = 1; i < ls.size(); ++i) {
        const double inc = ls[i] - ls[i - 1];
        if (inc > 0.0) {
          dx.push_back(lx[i]);
          dy.push_back(std::log(inc));
        }
      }
      if (dx.size() >= 2) {
        const LineFit f = fit_line(dx, dy);
        r.growth_exponent = f.slope;
        r.growth_coefficient = std::exp(f.intercept);
      }
    }
  }
  return r;
}

AbelCheck abel_identity(const std::vector<double>& tails) {
  if (tails.size() < 2) throw DomainError("abel_identity: need T_0 and T_1 at least");
  const std::size_t n = tails.size() - 1;
  CompensatedSum lhs, rhs;
  for (std::size_t k = 1; k <= n; ++k) {
    // Exact difference as hi + lo (TwoSum).
    const double a = tails[k - 1], b = -tails[k];
    const double hi = a + b;
    const double bb = hi - a;
    const double lo = (a - (hi - bb)) + (b - bb);
    const double kd = static_cast<double>(k);
    lhs.add_product(kd, hi);
    lhs.add_product(kd, lo);
  }
  lhs.add_product(static_cast<double>(n), tails[n]);
  for (std::size_t k = 0; k < n; ++k) rhs.add(tails[k]);
  AbelCheck c;
  c.lhs = lhs.value();
  c.rhs = rhs.value();
  c.gap_ulps = std::abs(c.lhs - c.rhs) / ulp(c.rhs);
  return c;
}

double kac_from_cylinders(const DensityApprox& density, const YSequence& y, std::size_t n_max) {
  CompensatedSum s;
  for (std::size_t k = 1; k <= n_max; ++k) s.add_product(static_cast<double>(k), cylinder_mass(density, y, k));
  s.add_product(static_cast<double>(n_max), tail_mass(density, y, n_max));
  return s.value();
}

X3Bounds check_x3_bounds(const TailProfile& profile, double c, double v) {
  X3Bounds b;
  b.minimal_d = 1.0;
  for (std::size_t i = 0; i < profile.n_values.size(); ++i) {
    const double ref = c * std::pow(static_cast<double>(profile.n_values[i]), -v);
    const double q = profile.tail_masses[i] / ref;
    b.minimal_d = std::max({b.minimal_d, q, 1.0 / q});
  }
  b.holds = std::isfinite(b.minimal_d);
  return b;
}

}  // namespace lsv
