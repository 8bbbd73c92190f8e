#include "lsv/density.hpp"

#include <algorithm>
#include <cmath>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"

namespace lsv {

std::string to_string(NormConvention c) {
  return c == NormConvention::wrt_lambda_tilde ? "wrt_lambda_tilde" : "wrt_lebesgue";
}

double lambda_tilde_integral(const GridFunction& f, double a, double b) { return 2.0 * f.integrate(a, b); }

RuelleOperator::RuelleOperator(const BranchCache& cache, Exec exec)
    : grid_(cache.grid()), n_(cache.grid().n), m_(n_ * n_, 0.0), tail_(n_, 0.0),
      tail_stencil_(cubic_stencil(cache.grid(), cache.tail_point())),
      truncation_bound_(cache.system().truncation_bound()) {
  const std::size_t K = cache.k_max();
  auto row = [&](std::size_t i) {
    std::vector<CompensatedSum> acc(n_);
    for (std::size_t k = 1; k <= K; ++k) {
      const Stencil s = cubic_stencil(grid_, cache.preimage(i, k));
      const double g = cache.g(i, k);
      for (int q = 0; q < 4; ++q) acc[s.first + q].add_product(g, s.weights[q]);
    }
    tail_[i] = cache.tail_weight(i);
    for (int q = 0; q < 4; ++q) acc[tail_stencil_.first + q].add_product(tail_[i], tail_stencil_.weights[q]);
    for (std::size_t j = 0; j < n_; ++j) m_[i * n_ + j] = acc[j].value();
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t i = 0; i < n_; ++i) row(i);
  } else {
    for (std::size_t i = 0; i < n_; ++i) row(i);
  }
}

std::vector<double> RuelleOperator::apply(std::span<const double> u, Exec exec) const {
  if (u.size() != n_) throw DomainError("RuelleOperator::apply: size mismatch");
  std::vector<double> out(n_);
  auto row = [&](std::size_t i) {
    CompensatedSum s;
    const double* m = m_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) s.add_product(m[j], u[j]);
    out[i] = s.value();
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n_; ++i) row(i);
  } else {
    for (std::size_t i = 0; i < n_; ++i) row(i);
  }
  return out;
}

std::vector<double> RuelleOperator::tail_part(std::span<const double> u) const {
  std::vector<double> out(n_);
  double ut = 0.0;
  for (int q = 0; q < 4; ++q) ut += tail_stencil_.weights[q] * u[tail_stencil_.first + q];
  for (std::size_t i = 0; i < n_; ++i) out[i] = tail_[i] * ut;
  return out;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> alternate_start(const UniformGrid& g) {
  std::vector<double> u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = 2.0 * (g.node(i) - 0.5) + 0.5;
  return u;
}

namespace {

void normalize(std::vector<double>& u, const std::vector<double>& qw) {
  CompensatedSum s;
  for (std::size_t i = 0; i < u.size(); ++i) s.add_product(qw[i], u[i]);
  const double mass = 2.0 * s.value();
  for (double& v : u) v /= mass;
}

}  // namespace

DensityApprox solve_density(const RuelleOperator& op, double alpha, std::size_t k_max,
                            const SolverOptions& opt, std::span<const double> u0) {
  if (!(opt.tol > 0.0)) throw DomainError("solve_density: tol must be positive");
  if (op.size() < 64) throw DomainError("solve_density: grid_size must be >= 64");
  const auto qw = interpolant_quadrature_weights(op.grid());
  std::vector<double> u = u0.empty() ? std::vector<double>(op.size(), 1.0) : std::vector<double>(u0.begin(), u0.end());
  normalize(u, qw);

  DensityApprox d;
  d.alpha = alpha;
  d.grid = op.grid();
  d.k_max = k_max;
  d.truncation_bound = op.truncation_bound();
  for (int it = 1; it <= opt.max_iter; ++it) {
    auto pu = op.apply(u);
    normalize(pu, qw);
    const double res = sup_distance(pu, u);
    d.residual_trace.push_back(res);
    u = std::move(pu);
    if (res <= opt.tol) {
      d.iterations = it;
      // Residual of the returned vector itself.
      auto check = op.apply(u);
      d.residual = sup_distance(check, u);
      d.values = std::move(u);
      d.min_value = *std::min_element(d.values.begin(), d.values.end());
      d.max_value = *std::max_element(d.values.begin(), d.values.end());
      return d;
    }
  }
  throw NonConvergence("solve_density: iteration cap reached", d.residual_trace);
}

DensityPipeline::DensityPipeline(double alpha, std::size_t grid_size, std::size_t k_max, const SolverOptions& opt)
    : system(MapParams::lsv(alpha), k_max),
      cache(system, UniformGrid(0.5, 1.0, grid_size)),
      op(cache),
      density(solve_density(op, alpha, k_max, opt)) {}

}  // namespace lsv
