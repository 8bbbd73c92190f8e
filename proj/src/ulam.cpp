#include "lsv/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"

namespace lsv {

namespace {

using Column = std::vector<std::pair<std::uint32_t, double>>;

// Spreads the source interval [lo, hi] over the cells it meets, as Lebesgue overlaps.
void spread(Column& col, double lo, double hi, double a0, double w, std::size_t cells) {
  if (!(hi > lo)) return;
  auto first = static_cast<std::size_t>(std::max(0.0, std::floor((lo - a0) / w)));
  first = std::min(first, cells - 1);
  for (std::size_t i = first; i < cells; ++i) {
    const double cl = a0 + static_cast<double>(i) * w;
    const double ch = cl + w;
    if (cl >= hi) break;
    const double ov = std::min(hi, ch) - std::max(lo, cl);
    if (ov > 0.0) {
      if (!col.empty() && col.back().first == i)
        col.back().second += ov;
      else
        col.emplace_back(static_cast<std::uint32_t>(i), ov);
    }
  }
}

}  // namespace

UlamDensity ulam_oracle(const MapParams& params, std::size_t cells, int max_iterations, std::size_t k_max,
                        double tol) {
  if (cells < 256) throw DomainError("ulam_oracle: cells must be >= 256");
  params.validate();
  UlamDensity out;
  out.alpha = params.alpha;
  out.cells = cells;
  const double a0 = 0.5;
  const double w = out.cell_width();
  const YSequence ys = y_sequence(params, k_max);

  // Branch k maps into the first cell alone once (1 + y_{k-1})/2 <= a_1.
  std::size_t k0 = 1;
  while (k0 < k_max && ys.values[k0 - 1] > 2.0 * w) ++k0;
  out.explicit_branches = k0 - 1;

  std::vector<Column> cols(cells);
  std::vector<double> z(cells + 1);
  for (std::size_t j = 0; j <= cells; ++j) z[j] = out.edge(j);
  z[cells] = 1.0;
  for (std::size_t k = 1; k < k0; ++k) {
    if (k > 1)
      for (double& v : z) v = inverse_left_branch(params, v);
    for (std::size_t j = 0; j < cells; ++j)
      spread(cols[j], inverse_right_branch(z[j]), inverse_right_branch(z[j + 1]), a0, w, cells);
  }

  // Aggregated branches k >= k0: W(x) = sum_{k0 <= k <= K} G_k(x) + tail closure.
  const UniformGrid wg(0.5, 1.0, 257);
  std::vector<double> wv(wg.n);
  const double yk = ys.values[k_max];
  const double shape = yk / (ys.values[k_max - 1] - yk);
  for (std::size_t q = 0; q < wg.n; ++q) {
    double zz = wg.node(q);
    double g = 0.5;
    CompensatedSum s;
    if (k0 == 1) s.add(g);
    for (std::size_t k = 2; k <= k_max; ++k) {
      zz = inverse_left_branch(params, zz);
      g /= left_derivative(params, zz);
      if (k >= k0) s.add(g);
    }
    s.add(g * shape);
    wv[q] = s.value();
  }
  const GridFunction wf(wg, wv);
  // Exact mass of the aggregated source region is y_{k0-1}/2; fix the interpolation defect.
  const double target_mass = 0.5 * ys.values[k0 - 1];
  const double scale = target_mass / wf.integrate(0.5, 1.0);
  for (std::size_t j = 0; j < cells; ++j) {
    const double m = scale * wf.integrate(out.edge(j), j + 1 == cells ? 1.0 : out.edge(j + 1));
    cols[j].emplace_back(0u, m);
  }

  // Overlaps -> transition probabilities.
  std::vector<double> row_sum(cells, 0.0);
  for (auto& col : cols)
    for (auto& [i, v] : col) {
      v /= w;
      row_sum[i] += v;
    }
  for (double r : row_sum) out.max_row_sum_error = std::max(out.max_row_sum_error, std::abs(r - 1.0));

  std::vector<double> pi(cells, 1.0 / static_cast<double>(cells)), next(cells);
  for (int it = 1; it <= max_iterations; ++it) {
    for (std::size_t j = 0; j < cells; ++j) {
      CompensatedSum s;
      for (const auto& [i, v] : cols[j]) s.add_product(pi[i], v);
      next[j] = s.value();
    }
    const double total = compensated_total(next);
    double diff = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      next[j] /= total;
      diff = std::max(diff, std::abs(next[j] - pi[j]));
    }
    std::swap(pi, next);
    if (diff * static_cast<double>(cells) <= tol) {
      out.iterations = it;
      out.residual = diff * static_cast<double>(cells);
      out.values.resize(cells);
      for (std::size_t j = 0; j < cells; ++j) out.values[j] = pi[j] * static_cast<double>(cells);
      return out;
    }
  }
  throw NonConvergence("ulam_oracle: iteration cap reached", {});
}

double l1_gap(const UlamDensity& ulam, const DensityApprox& density) {
  const GridFunction h = density.function();
  std::vector<double> xs, ws;
  CompensatedSum s;
  for (std::size_t j = 0; j < ulam.cells; ++j) {
    xs.clear();
    ws.clear();
    const double lo = ulam.edge(j);
    const double hi = j + 1 == ulam.cells ? 1.0 : ulam.edge(j + 1);
    gauss_legendre_8(lo, hi, xs, ws);
    for (std::size_t q = 0; q < xs.size(); ++q) s.add(2.0 * ws[q] * std::abs(ulam.values[j] - h(xs[q])));
  }
  return s.value();
}

}  // namespace lsv
