#include "lsv/response.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"
#include "lsv/zeta.hpp"

namespace lsv {

namespace {

// int_0^{y} psi(z) rho(z) dz with the near-zero density rho(z) = h0 (z^{-alpha}/b + 1/2).
double near_zero_integral(const Potential& phi, const MapParams& p, double h0, double y) {
  if (y <= 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double z) {
    if (z <= 0.0) return 0.0;
    return phi.centered(z) * (std::pow(z, -p.alpha) / p.b_alpha + 0.5);
  };
  return h0 * ts.integrate(f, 0.0, y);
}

// int_{1/2}^{(1+y)/2} psi h~ d lambda~
double return_region_integral(const Potential& phi, const GridFunction& h, double y) {
  if (y <= 0.0) return 0.0;
  return 2.0 * integrate_piecewise(h.grid(), 0.5, inverse_right_branch(y),
                                   [&](double x) { return phi.centered(x) * h(x); });
}

}  // namespace

std::vector<SrbIntegral> srb_integral(const BranchCache& cache, const DensityApprox& density,
                                      const std::vector<Potential>& phis) {
  const InducedSystem& sys = cache.system();
  const MapParams& p = sys.params();
  const std::size_t K = cache.k_max();
  const std::size_t K2 = K / 2;
  const UniformGrid& grid = cache.grid();
  const std::size_t n = grid.n;
  const std::size_t np = phis.size();
  if (density.grid.n != n) throw DomainError("srb_integral: density and cache grids differ");
  if (K2 < 2) throw DomainError("srb_integral: k_max too small");
  const GridFunction h = density.function();
  const auto qw = interpolant_quadrature_weights(grid);
  const auto& ys = sys.y().values;

  struct Cut {
    std::size_t k;
    double shape;
    double h_tail;
  };
  const Cut cuts[2] = {{K, ys[K] / (ys[K - 1] - ys[K]), h(0.5 * (1.0 + 0.5 * ys[K]))},
                       {K2, ys[K2] / (ys[K2 - 1] - ys[K2]), h(0.5 * (1.0 + 0.5 * ys[K2]))}};

  // Per node and potential: truncated g at K, closure at K, g at K2 with closure.
  std::vector<double> g_trunc(n * np), g_close(n * np), g_half(n * np);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> s(np, 0.0);
    std::vector<CompensatedSum> acc(np);
    for (std::size_t k = 1; k <= K; ++k) {
      if (k >= 2) {
        const double zl = cache.z(i, k - 1);
        for (std::size_t q = 0; q < np; ++q) s[q] += phis[q].centered(zl);
      }
      const double yk = cache.preimage(i, k);
      const double w = cache.g(i, k) * h(yk);
      for (std::size_t q = 0; q < np; ++q) acc[q].add(w * (s[q] + phis[q].centered(yk)));
      if (k == K2) {
        const double rw = cache.g(i, K2) * cuts[1].shape * cuts[1].h_tail;
        for (std::size_t q = 0; q < np; ++q) g_half[i * np + q] = acc[q].value() + s[q] * rw;
      }
    }
    const double rw = cache.g(i, K) * cuts[0].shape * cuts[0].h_tail;
    for (std::size_t q = 0; q < np; ++q) {
      g_trunc[i * np + q] = acc[q].value();
      g_close[i * np + q] = s[q] * rw;
    }
  }

  std::vector<SrbIntegral> out(np);
  const double h0 = density.boundary_value();
  for (std::size_t q = 0; q < np; ++q) {
    CompensatedSum trunc, close, half;
    for (std::size_t i = 0; i < n; ++i) {
      trunc.add_product(2.0 * qw[i], g_trunc[i * np + q]);
      close.add_product(2.0 * qw[i], g_close[i * np + q]);
      half.add_product(2.0 * qw[i], g_half[i * np + q]);
    }
    const double yK = ys[K], yK2 = ys[K2];
    const double tail = close.value() + return_region_integral(phis[q], h, yK) +
                        near_zero_integral(phis[q], p, h0, yK);
    const double v_half = half.value() + return_region_integral(phis[q], h, yK2) +
                          near_zero_integral(phis[q], p, h0, yK2);
    SrbIntegral& r = out[q];
    r.potential = phis[q].name();
    r.truncated = trunc.value();
    r.tail = tail;
    r.value = r.truncated + tail;
    r.tail_bound = std::abs(r.value - v_half);
    r.truncation = K;
  }
  return out;
}

std::vector<SrbIntegral> srb_integral_pushforward(const DensityApprox& density, const MapParams& p,
                                                  const std::vector<Potential>& phis, std::size_t n_trunc) {
  if (p.alpha > 1.0) throw DomainError("srb_integral_pushforward: requires alpha <= 1");
  if (n_trunc < 4) throw DomainError("srb_integral_pushforward: n_trunc too small");
  const std::size_t np = phis.size();
  const GridFunction h = density.function();
  const YSequence ys = y_sequence(p, n_trunc);
  const std::size_t T2 = n_trunc / 2;

  // contrib[k][q]: the cylinder {tau = k}.
  std::vector<double> contrib((n_trunc + 1) * np, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t k = 1; k <= n_trunc; ++k) {
    std::vector<double> nodes, weights;
    gauss_legendre_8(ys.values[k], ys.values[k - 1], nodes, weights);
    std::vector<CompensatedSum> acc(np);
    std::vector<double> s(np);
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      const double w = nodes[m];
      const double x = inverse_right_branch(w);
      for (std::size_t q = 0; q < np; ++q) s[q] = phis[q].centered(x);
      double v = w;
      for (std::size_t step = 0; step + 2 <= k; ++step) {
        for (std::size_t q = 0; q < np; ++q) s[q] += phis[q].centered(v);
        v = left_branch(p, v);
      }
      const double wt = weights[m] * h(x);
      for (std::size_t q = 0; q < np; ++q) acc[q].add(wt * s[q]);
    }
    for (std::size_t q = 0; q < np; ++q) contrib[k * np + q] = acc[q].value();
  }

  const double ab = p.alpha * p.b_alpha;
  const double h0 = density.boundary_value();
  // Excursions started below y_T cross [y_T, y_{T-1}) once; sum_{j>=1} (f_1^{-j})'(v) from
  // the flow approximation z_j(v) ~ (v^{-alpha} + alpha b j)^{-1/alpha}.
  auto crossing_density = [&](double v) {
    return std::pow(ab, -1.0 - 1.0 / p.alpha) * std::pow(v, -p.alpha - 1.0) *
           hurwitz_zeta(1.0 + 1.0 / p.alpha, 1.0 + std::pow(v, -p.alpha) / ab);
  };
  auto closure = [&](std::size_t T, std::size_t q) {
    const double yT = ys.values[T];
    const double h_tail = h(0.5 * (1.0 + 0.5 * yT));
    std::vector<double> nodes, weights;
    gauss_legendre_8(yT, ys.values[T - 1], nodes, weights);
    CompensatedSum c;
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      double v = nodes[m], s = 0.0;
      for (std::size_t step = 0; step + 2 <= T; ++step) {
        s += phis[q].centered(v);
        v = left_branch(p, v);
      }
      c.add(weights[m] * s * crossing_density(nodes[m]) * h_tail);
    }
    return c.value() + return_region_integral(phis[q], h, yT) + near_zero_integral(phis[q], p, h0, yT);
  };

  std::vector<SrbIntegral> out(np);
  for (std::size_t q = 0; q < np; ++q) {
    CompensatedSum full, half;
    for (std::size_t k = 1; k <= n_trunc; ++k) {
      full.add(contrib[k * np + q]);
      if (k <= T2) half.add(contrib[k * np + q]);
    }
    SrbIntegral& r = out[q];
    r.potential = phis[q].name();
    r.truncated = full.value();
    r.tail = closure(n_trunc, q);
    r.value = r.truncated + r.tail;
    r.tail_bound = std::abs(r.value - (half.value() + closure(T2, q)));
    r.truncation = n_trunc;
  }
  return out;
}

double nu_interval_mass(const DensityApprox& density, const MapParams& p, double a, double b,
                        std::optional<double> kac_total, std::size_t n_terms) {
  if (!(0.0 <= a && a < b && b <= 1.0)) throw DomainError("nu_interval_mass: need 0 <= a < b <= 1");
  const GridFunction h = density.function();
  double mass = 0.0;
  if (b > 0.5) mass += lambda_tilde_integral(h, std::max(a, 0.5), b);
  if (a >= 0.5) return mass;
  const double hi = std::min(b, 0.5);
  if (a == 0.0) {
    if (!kac_total) throw DomainError("nu_interval_mass: intervals at 0 need the Kac total (alpha < 1)");
    const double left = *kac_total - 1.0;
    return mass + (hi < 0.5 ? left - nu_interval_mass(density, p, hi, 0.5, kac_total, n_terms) : left);
  }
  // nu([a, hi)) = sum_{n>=1} nu~([(1+z_{n-1}(a))/2, (1+z_{n-1}(hi))/2))
  double za = a, zb = hi;
  CompensatedSum s;
  for (std::size_t m = 0; m < n_terms; ++m) {
    if (m > 0) {
      za = inverse_left_branch(p, za);
      zb = inverse_left_branch(p, zb);
    }
    s.add(lambda_tilde_integral(h, inverse_right_branch(za), inverse_right_branch(zb)));
  }
  // Remaining terms: h~(1/2) sum_{m>=1} (z_{N+m}(hi) - z_{N+m}(a)) with the flow approximation,
  // linearized in the (small) gap between the two endpoint orbits.
  const double ab = p.alpha * p.b_alpha;
  const double ua = std::pow(za, -p.alpha), ub = std::pow(zb, -p.alpha);
  const double um = 0.5 * (ua + ub);
  s.add(density.boundary_value() * (ua - ub) / p.alpha * std::pow(ab, -1.0 - 1.0 / p.alpha) *
        hurwitz_zeta(1.0 + 1.0 / p.alpha, 1.0 + um / ab));
  return mass + s.value();
}

double phy_integral(const Potential& phi, double alpha, double srb, double kac) {
  if (alpha >= 1.0) return phi.value_at_zero();
  return phi.value_at_zero() + srb / kac;
}

std::vector<double> geometric_alpha_grid(int j_lo, int j_hi) {
  std::vector<double> a;
  for (int j = j_lo; j <= j_hi; ++j) a.push_back(1.0 - std::ldexp(1.0, -j));
  return a;
}

std::vector<ResponseCurve> build_response_curves(const std::vector<Potential>& phis, const std::vector<double>& alphas,
                                                 const ResponseConfig& cfg) {
  std::vector<ResponseCurve> curves(phis.size());
  for (std::size_t q = 0; q < phis.size(); ++q) {
    curves[q].potential = phis[q].name();
    curves[q].phi_zero = phis[q].value_at_zero();
  }
  const SolverOptions opt{cfg.tol, 1000};
  auto run = [&](double alpha) {
    try {
      DensityPipeline pipe(alpha, cfg.grid_size, cfg.k_max, opt);
      const TailProfile prof = fit_tail(pipe.density, pipe.system.y(), cfg.fit_lo, cfg.fit_hi);
      const auto srb = srb_integral(pipe.cache, pipe.density, phis);
      if (alpha >= 1.0) {
        for (std::size_t q = 0; q < phis.size(); ++q) {
          curves[q].srb_at_one = srb[q].value;
          curves[q].srb_at_one_tail_bound = srb[q].tail_bound;
          curves[q].c1 = prof.pinned_c;
          curves[q].h1_half = pipe.density.boundary_value();
        }
        return;
      }
      const KacResult kac = kac_sum(pipe.density, pipe.system.y(), cfg.k_max, prof);
      for (std::size_t q = 0; q < phis.size(); ++q) {
        ResponseRow r;
        r.alpha = alpha;
        r.srb = srb[q].value;
        r.srb_tail_bound = srb[q].tail_bound;
        r.kac = kac.total;
        r.r_phy = phy_integral(phis[q], alpha, r.srb, r.kac);
        r.quotient = (r.r_phy - phis[q].value_at_zero()) / (alpha - 1.0);
        r.h_half = pipe.density.boundary_value();
        r.c_alpha = prof.pinned_c;
        r.density_residual = pipe.density.residual;
        curves[q].rows.push_back(r);
      }
    } catch (const std::exception& e) {
      throw ConvergenceError("response curve failed at alpha = " + std::to_string(alpha) + ": " + e.what());
    }
  };
  for (double a : alphas) {
    if (!(a < 1.0)) throw DomainError("build_response_curves: alpha grid must lie below 1");
    run(a);
  }
  run(1.0);
  return curves;
}

std::vector<double> neville_to_zero(const std::vector<double>& h, const std::vector<double>& f) {
  const std::size_t n = h.size();
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  std::vector<double> diag;
  for (std::size_t i = 0; i < n; ++i) {
    t[i][0] = f[i];
    for (std::size_t j = 1; j <= i; ++j)
      t[i][j] = (h[i - j] * t[i][j - 1] - h[i] * t[i - 1][j - 1]) / (h[i - j] - h[i]);
    diag.push_back(t[i][i]);
  }
  return diag;
}

DerivativeEstimate one_sided_derivative(const ResponseCurve& curve) {
  DerivativeEstimate d;
  std::vector<double> hs;
  for (const auto& r : curve.rows) {
    d.quotients.push_back(r.quotient);
    hs.push_back(1.0 - r.alpha);
  }
  d.analytic_target = curve.c1 > 0.0 ? -curve.srb_at_one / curve.c1 : 0.0;
  d.rho_formula_target = curve.h1_half > 0.0 ? -8.0 / rho_from_h_tilde(curve.h1_half) * curve.srb_at_one : 0.0;
  if (d.quotients.empty()) return d;

  d.monotone = true;
  for (std::size_t i = 2; i < d.quotients.size(); ++i) {
    const double a = d.quotients[i - 1] - d.quotients[i - 2];
    const double b = d.quotients[i] - d.quotients[i - 1];
    if (a * b < 0.0) d.monotone = false;
  }
  if (d.quotients.size() == 1) {
    d.estimate = d.quotients.front();
    d.extrapolated = false;
  } else {
    d.extrapolations = neville_to_zero(hs, d.quotients);
    d.estimate = d.extrapolations.back();
    d.error_estimate = std::abs(d.extrapolations.back() - d.extrapolations[d.extrapolations.size() - 2]);
    d.extrapolated = true;
  }
  const double scale = std::max({std::abs(d.estimate), std::abs(d.analytic_target), 1e-300});
  d.converged = d.extrapolated && d.error_estimate <= 1e-2 * scale;
  // relative to the target; absolute when the target vanishes
  auto rel = [](double a, double target) {
    return target == 0.0 ? std::abs(a) : std::abs(a - target) / std::abs(target);
  };
  d.relative_gap = rel(d.estimate, d.analytic_target);
  d.relative_gap_rho_formula = rel(d.estimate, d.rho_formula_target);
  return d;
}

}  // namespace lsv
