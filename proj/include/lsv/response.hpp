#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lsv/density.hpp"
#include "lsv/potential.hpp"
#include "lsv/tail.hpp"

namespace lsv {

/// One evaluation of int (phi - phi(0)) d nu_alpha.
struct SrbIntegral {
  std::string potential;
  double value = 0.0;      // truncated sum + modelled tail
  double truncated = 0.0;  // return times <= K only
  double tail = 0.0;
  /// |value(K) - value(K/2)|: the effect of halving the truncation with the tail model in place.
  double tail_bound = 0.0;
  std::size_t truncation = 0;
};

/// Branch-sum route: integrates
///   g(x) = sum_{k<=K} G_k(x) [ sum_{l=1}^{k-1} psi(z_l x) + psi(F_k^{-1} x) ] h~(F_k^{-1} x)
/// over Y w.r.t. lambda~ on the cache grid, psi = phi - phi(0); return times k > K are closed
/// with the Ruelle tail weight and the near-zero density h~(1/2)(z^{-alpha}/b + 1/2).
std::vector<SrbIntegral> srb_integral(const BranchCache& cache, const DensityApprox& density,
                                      const std::vector<Potential>& phis);

/// Pushforward route: sum over cylinders {tau = k}, k <= n_trunc, of Gauss-Legendre quadrature
/// of the forward Birkhoff sum of psi along the excursion, in the coordinate w = 2x - 1.
std::vector<SrbIntegral> srb_integral_pushforward(const DensityApprox& density, const MapParams& p,
                                                  const std::vector<Potential>& phis, std::size_t n_trunc = 4096);

/// nu_alpha([a, b)) for 0 <= a < b <= 1 (nu~(Y) = 1). `kac_total` is nu_alpha([0,1]) and is
/// needed when a = 0; pass nullopt for alpha >= 1.
double nu_interval_mass(const DensityApprox& density, const MapParams& p, double a, double b,
                        std::optional<double> kac_total, std::size_t n_terms = 100000);

/// phi(0) + srb / kac for alpha < 1; phi(0) for alpha >= 1.
double phy_integral(const Potential& phi, double alpha, double srb, double kac);

struct ResponseRow {
  double alpha = 0.0;
  double srb = 0.0;
  double srb_tail_bound = 0.0;
  double kac = 0.0;
  double r_phy = 0.0;
  double quotient = 0.0;  // (r_phy - phi(0)) / (alpha - 1)
  double h_half = 0.0;
  double c_alpha = 0.0;
  double density_residual = 0.0;
};

struct ResponseCurve {
  std::string potential;
  double phi_zero = 0.0;
  std::vector<ResponseRow> rows;
  /// Quantities at the transition alpha = 1.
  double srb_at_one = 0.0;
  double srb_at_one_tail_bound = 0.0;
  double c1 = 0.0;
  double h1_half = 0.0;
};

struct ResponseConfig {
  std::size_t grid_size = 1024;
  std::size_t k_max = 10000;
  double tol = 1e-10;
  std::int64_t fit_lo = 100;
  std::int64_t fit_hi = 10000;
};

/// Per-alpha pipeline (system, density, tail fit, Kac sum, srb integral) for several potentials
/// at once, plus the alpha = 1 reference. Curves come back in the order of `phis`.
std::vector<ResponseCurve> build_response_curves(const std::vector<Potential>& phis, const std::vector<double>& alphas,
                                                 const ResponseConfig& cfg = {});

/// Geometric grid 1 - 2^{-j}, j = j_lo..j_hi.
std::vector<double> geometric_alpha_grid(int j_lo = 4, int j_hi = 10);

struct DerivativeEstimate {
  std::vector<double> quotients;
  /// Neville tableau diagonal: extrapolations of increasing order towards alpha = 1.
  std::vector<double> extrapolations;
  double estimate = 0.0;
  double error_estimate = 0.0;
  bool extrapolated = false;  // false for a single grid point
  bool monotone = false;
  bool converged = false;
  /// -srb(1) / c_1, the general formula with v'(1) = -1 and c_1 from the tail fit.
  double analytic_target = 0.0;
  /// -8 / rho_1(1/2) * srb(1), with rho = 2 h~.
  double rho_formula_target = 0.0;
  double relative_gap = 0.0;             // vs analytic_target
  double relative_gap_rho_formula = 0.0;  // vs rho_formula_target
};

/// Polynomial (Richardson/Neville) extrapolation in h = 1 - alpha to h = 0.
DerivativeEstimate one_sided_derivative(const ResponseCurve& curve);

/// Neville extrapolation of values f(h_i) to h = 0; returns the diagonal T[i][i].
std::vector<double> neville_to_zero(const std::vector<double>& h, const std::vector<double>& f);

}  // namespace lsv
