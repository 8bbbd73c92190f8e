#include "lsv/map.hpp"

#include <cmath>
#include <sstream>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"

namespace lsv {

MapParams MapParams::lsv(double alpha, std::optional<double> epsilon) {
  MapParams p;
  p.alpha = alpha;
  p.b_alpha = std::exp2(alpha);
  p.epsilon = epsilon.value_or(0.5 * alpha);
  p.validate();
  return p;
}

void MapParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  if (!(b_alpha > 0.0) || !std::isfinite(b_alpha)) throw DomainError("b_alpha must be positive");
  if (!(epsilon > 0.0 && epsilon < alpha)) throw DomainError("epsilon must lie in (0, alpha)");
}

double left_branch(const MapParams& p, double x) noexcept {
  return std::fma(p.b_alpha * std::pow(x, p.alpha), x, x);
}

double left_derivative(const MapParams& p, double x) noexcept {
  return 1.0 + p.b_alpha * (1.0 + p.alpha) * std::pow(x, p.alpha);
}

double left_second_derivative(const MapParams& p, double x) noexcept {
  return p.b_alpha * (1.0 + p.alpha) * p.alpha * std::pow(x, p.alpha - 1.0);
}

double left_third_derivative(const MapParams& p, double x) noexcept {
  return p.b_alpha * (1.0 + p.alpha) * p.alpha * (p.alpha - 1.0) * std::pow(x, p.alpha - 2.0);
}

double eval_map(const MapParams& p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "eval_map: x = " << x << " outside [0,1]";
    throw DomainError(os.str());
  }
  if (x <= 0.5) return std::min(left_branch(p, x), 1.0);
  return 2.0 * x - 1.0;
}

double inverse_left_branch(const MapParams& p, double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    std::ostringstream os;
    os << "inverse_left_branch: y = " << y << " outside [0,1]";
    throw DomainError(os.str());
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;

  const double a = p.alpha;
  const double b = p.b_alpha;
  // x(1 + b x^a) = y with x <= y gives lo <= x <= hi.
  double lo = y / (1.0 + b * std::pow(y, a));
  double hi = std::min(y / (1.0 + b * std::pow(lo, a)), 0.5);
  if (lo > hi) lo = hi;

  // The residual is convex and increasing, so Newton from the upper bracket decreases
  // monotonically to the root.
  double x = hi;
  for (int it = 0; it < 200; ++it) {
    const double xa = std::pow(x, a);
    const double g = std::fma(b * xa, x, x) - y;
    if (g == 0.0) return x;
    if (g > 0.0)
      hi = x;
    else
      lo = x;
    const double dg = 1.0 + b * (1.0 + a) * xa;
    double next = x - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * x ||
        hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) {
      return next;
    }
    x = next;
  }
  throw ConvergenceError("inverse_left_branch: no convergence");
}

std::vector<Branch> lsv_branches(const MapParams& p) {
  Branch left;
  left.index = 1;
  left.domain = {0.0, 0.5};
  left.forward = [p](double x) { return left_branch(p, x); };
  left.derivative = [p](double x) { return left_derivative(p, x); };
  left.second_derivative = [p](double x) { return left_second_derivative(p, x); };
  left.third_derivative = [p](double x) { return left_third_derivative(p, x); };
  left.inverse = [p](double y) { return inverse_left_branch(p, y); };

  Branch right;
  right.index = 2;
  right.domain = {0.5, 1.0};
  right.forward = [](double x) { return 2.0 * x - 1.0; };
  right.derivative = [](double) { return 2.0; };
  right.second_derivative = [](double) { return 0.0; };
  right.third_derivative = [](double) { return 0.0; };
  right.inverse = [](double y) { return inverse_right_branch(y); };
  return {left, right};
}

YSequence y_sequence(const MapParams& p, std::size_t n_max) {
  if (n_max < 1) throw DomainError("y_sequence: n_max must be >= 1");
  YSequence s;
  s.values.reserve(n_max + 1);
  s.values.push_back(1.0);
  for (std::size_t n = 1; n <= n_max; ++n) s.values.push_back(inverse_left_branch(p, s.values.back()));
  return s;
}

YAsymptoticsReport check_y_asymptotics(const YSequence& seq, const MapParams& p, std::size_t n_lo,
                                       std::size_t n_hi) {
  if (n_lo < 1 || n_hi < n_lo || n_hi > seq.n_max())
    throw DomainError("check_y_asymptotics: window outside the sequence");
  const double scale = p.alpha * p.b_alpha;
  auto deviation = [&](std::size_t n) {
    return std::abs(seq.values[n] * std::pow(scale * static_cast<double>(n), 1.0 / p.alpha) - 1.0);
  };

  YAsymptoticsReport r;
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  for (std::size_t n = n_lo; n <= n_hi; ++n) r.max_scaled_deviation = std::max(r.max_scaled_deviation, deviation(n));
  r.points = n_hi - n_lo + 1;
  if (n_hi == n_lo) return r;

  std::vector<double> lx, ly;
  for (auto n : log_spaced_integers(static_cast<std::int64_t>(n_lo), static_cast<std::int64_t>(n_hi), 60)) {
    const double d = deviation(static_cast<std::size_t>(n));
    if (d <= 0.0) continue;
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(d));
  }
  if (lx.size() >= 2) r.fitted_decay_exponent = fit_line(lx, ly).slope;
  return r;
}

}  // namespace lsv
