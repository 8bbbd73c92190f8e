#include "lsv/induced.hpp"

#include <algorithm>
#include <cmath>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"

namespace lsv {

InducedSystem::InducedSystem(const MapParams& params, std::size_t k_max)
    : params_(params), k_max_(k_max), y_(y_sequence(params, std::max<std::size_t>(k_max, 2))) {
  params_.validate();
  if (k_max < 2) throw DomainError("InducedSystem: k_max must be >= 2");
  const double expo = 1.0 + 1.0 / params_.alpha;
  for (auto k : log_spaced_integers(10, static_cast<std::int64_t>(std::max<std::size_t>(k_max, 10)), 24)) {
    const auto kk = static_cast<std::size_t>(k);
    // G_k is decreasing in x, so its sup sits at x = 1/2.
    d1_ = std::max(d1_, weight(kk, 0.5) * std::pow(static_cast<double>(kk), expo));
  }
}

std::pair<double, double> InducedSystem::inverse_and_weight(std::size_t k, double x) const {
  if (k < 1) throw DomainError("inverse_branch: k must be >= 1");
  if (!(x >= 0.5 && x <= 1.0)) throw DomainError("inverse_branch: x outside Y");
  double z = x;
  double g = 0.5;
  for (std::size_t j = 1; j < k; ++j) {
    z = inverse_left_branch(params_, z);
    g /= left_derivative(params_, z);
  }
  return {inverse_right_branch(z), g};
}

double InducedSystem::inverse_branch(std::size_t k, double x) const { return inverse_and_weight(k, x).first; }

double InducedSystem::weight(std::size_t k, double x) const { return inverse_and_weight(k, x).second; }

Interval InducedSystem::cylinder(std::size_t k) const {
  if (k < 1) throw DomainError("cylinder: k must be >= 1");
  if (k <= y_.n_max()) return {0.5 * (1.0 + y_.values[k]), 0.5 * (1.0 + y_.values[k - 1])};
  double yk = y_.values.back();
  double yk1 = yk;
  for (std::size_t j = y_.n_max(); j < k; ++j) {
    yk1 = yk;
    yk = inverse_left_branch(params_, yk);
  }
  return {0.5 * (1.0 + yk), 0.5 * (1.0 + yk1)};
}

double InducedSystem::truncation_bound() const noexcept {
  return d1_ * params_.alpha * std::pow(static_cast<double>(k_max_), -1.0 / params_.alpha);
}

BranchCache::BranchCache(const InducedSystem& sys, const UniformGrid& grid, Exec exec)
    : sys_(&sys), grid_(grid), k_max_(sys.k_max()) {
  const std::size_t n = grid.n;
  const std::size_t K = k_max_;
  z_.assign(n * K, 0.0);
  g_.assign(n * K, 0.0);
  tail_w_.assign(n, 0.0);
  const MapParams p = sys.params();
  const double yk = sys.y().values[K];
  const double shape = yk / (sys.y().values[K - 1] - yk);
  tail_point_ = 0.5 * (1.0 + 0.5 * yk);

  auto fill = [&](std::size_t i) {
    double* zr = z_.data() + i * K;
    double* gr = g_.data() + i * K;
    double z = grid.node(i);
    double g = 0.5;
    zr[0] = z;
    gr[0] = g;
    for (std::size_t j = 1; j < K; ++j) {
      z = inverse_left_branch(p, z);
      g /= left_derivative(p, z);
      zr[j] = z;
      gr[j] = g;
    }
    tail_w_[i] = g * shape;
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t i = 0; i < n; ++i) fill(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) fill(i);
  }
}

double BranchCache::round_trip_error(std::size_t k_check) const {
  const MapParams& p = sys_->params();
  double worst = 0.0;
  for (std::size_t i = 0; i < grid_.n; ++i) {
    for (std::size_t k = 1; k <= std::min(k_check, k_max_); ++k) {
      // right branch once, then k-1 left steps: the itinerary of the k-th cylinder
      double x = 2.0 * preimage(i, k) - 1.0;
      for (std::size_t s = 1; s < k; ++s) x = left_branch(p, x);
      worst = std::max(worst, std::abs(x - grid_.node(i)));
    }
  }
  return worst;
}

namespace {

// log G_k and its first two x-derivatives at x, plus F_k^{-1}(x).
struct BranchJet {
  double inverse = 0.0;
  double log_g = 0.0;
  double dlog = 0.0;
  double d2log = 0.0;
};

std::vector<BranchJet> branch_jets(const MapParams& p, double x, std::size_t k_max) {
  std::vector<BranchJet> out(k_max);
  double z = x, dz = 1.0, d2z = 0.0;
  double log_g = -std::log(2.0), dlog = 0.0, d2log = 0.0;
  out[0] = {inverse_right_branch(z), log_g, 0.0, 0.0};
  for (std::size_t j = 1; j < k_max; ++j) {
    z = inverse_left_branch(p, z);
    const double f1 = left_derivative(p, z);
    const double f2 = left_second_derivative(p, z);
    const double f3 = left_third_derivative(p, z);
    const double dz_new = dz / f1;
    const double d2z_new = d2z / f1 - dz * f2 * dz_new / (f1 * f1);
    dz = dz_new;
    d2z = d2z_new;
    const double r = f2 / f1;
    log_g -= std::log(f1);
    dlog -= r * dz;
    d2log -= (f3 / f1 - r * r) * dz * dz + r * d2z;
    out[j] = {inverse_right_branch(z), log_g, dlog, d2log};
  }
  return out;
}

}  // namespace

ConditionReport spot_check_conditions(const std::vector<double>& alphas, std::size_t k_max,
                                      std::size_t grid_points, double h_alpha) {
  if (alphas.empty() || k_max < 4 || grid_points < 2) throw DomainError("spot_check_conditions: empty ranges");
  ConditionReport rep;
  rep.a1_holds = true;
  for (double alpha : alphas) {
    const MapParams p = MapParams::lsv(alpha);
    const MapParams pm = MapParams::lsv(alpha - h_alpha);
    const MapParams pp = MapParams::lsv(alpha + h_alpha);
    ConditionSpotCheck row;
    row.alpha = alpha;
    std::vector<double> norm_g(k_max, 0.0), gamma(k_max, 1.0);
    for (std::size_t q = 0; q < grid_points; ++q) {
      const double x = 0.5 + 0.5 * static_cast<double>(q) / static_cast<double>(grid_points - 1);
      const auto jc = branch_jets(p, x, k_max);
      const auto jm = branch_jets(pm, x, k_max);
      const auto jp = branch_jets(pp, x, k_max);
      for (std::size_t k = 0; k < k_max; ++k) {
        const double g = std::exp(jc[k].log_g);
        norm_g[k] = std::max(norm_g[k], g);
        row.a2_sup_dlog = std::max(row.a2_sup_dlog, std::abs(jc[k].dlog));
        row.a3_sup_d2 = std::max(row.a3_sup_d2, std::abs(jc[k].d2log + jc[k].dlog * jc[k].dlog));
        const double d_inv = (jp[k].inverse - jm[k].inverse) / (2.0 * h_alpha);
        const double d_log = (jp[k].log_g - jm[k].log_g) / (2.0 * h_alpha);
        const double d_dlog = (jp[k].dlog - jm[k].dlog) / (2.0 * h_alpha);
        row.a4_sup_dalpha_inverse = std::max(row.a4_sup_dalpha_inverse, std::abs(d_inv));
        row.a5_sup_dalpha_log = std::max(row.a5_sup_dalpha_log, std::abs(d_log));
        row.a6_sup_dalpha_d1 = std::max(row.a6_sup_dalpha_d1, std::abs(d_dlog + jc[k].dlog * d_log));
        gamma[k] = std::max(gamma[k], std::abs(d_log));
      }
    }
    CompensatedSum total, late;
    for (std::size_t k = 0; k < k_max; ++k) {
      row.a1_max_weight = std::max(row.a1_max_weight, norm_g[k]);
      total.add_product(norm_g[k], gamma[k]);
      if (k >= k_max / 2) late.add_product(norm_g[k], gamma[k]);
    }
    row.a7_partial_sum = total.value();
    row.a7_tail_increment = late.value();
    if (row.a1_max_weight > 0.5) rep.a1_holds = false;
    rep.rows.push_back(row);
  }
  auto spread = [&](auto member) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& r : rep.rows) {
      lo = std::min(lo, r.*member);
      hi = std::max(hi, r.*member);
    }
    return lo > 0.0 ? hi / lo : INFINITY;
  };
  rep.a2_spread = spread(&ConditionSpotCheck::a2_sup_dlog);
  rep.a3_spread = spread(&ConditionSpotCheck::a3_sup_d2);
  rep.a7_cauchy = std::all_of(rep.rows.begin(), rep.rows.end(), [](const ConditionSpotCheck& r) {
    return r.a7_tail_increment < 0.05 * r.a7_partial_sum;
  });
  return rep;
}

double weight_decay_slope(const InducedSystem& sys, std::size_t k_lo, std::size_t k_hi, std::size_t grid_points) {
  std::vector<double> lx, ly;
  for (auto k : log_spaced_integers(static_cast<std::int64_t>(k_lo), static_cast<std::int64_t>(k_hi), 30)) {
    double sup = 0.0;
    for (std::size_t q = 0; q < grid_points; ++q) {
      const double x = 0.5 + 0.5 * static_cast<double>(q) / static_cast<double>(grid_points - 1);
      sup = std::max(sup, sys.weight(static_cast<std::size_t>(k), x));
    }
    lx.push_back(std::log(static_cast<double>(k)));
    ly.push_back(std::log(sup));
  }
  return fit_line(lx, ly).slope;
}

}  // namespace lsv
