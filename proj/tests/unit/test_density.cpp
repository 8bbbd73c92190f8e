#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lsv/density.hpp"
#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"

using namespace lsv;

namespace {

const DensityPipeline& pipe08() {
  static const DensityPipeline p(0.8, 513, 4000);
  return p;
}

double integral(const UniformGrid& g, const std::vector<double>& v) {
  return lambda_tilde_integral(GridFunction(g, v));
}

}  // namespace

TEST_CASE("density conventions") {
  CHECK(rho_from_h_tilde(1.25) == 2.5);
  CHECK(h_tilde_from_rho(2.5) == 1.25);
  CHECK(to_string(NormConvention::wrt_lambda_tilde) != to_string(NormConvention::wrt_lebesgue));
}

TEST_CASE("the operator preserves the integral") {
  const auto& op = pipe08().op;
  const auto g = op.grid();
  std::vector<double> one(g.n, 1.0);
  CHECK(std::abs(integral(g, op.apply(one)) - 1.0) <= 1e-6);
  std::vector<double> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) v[i] = 1.0 + 0.5 * std::sin(7.0 * g.node(i));
  CHECK(std::abs(integral(g, op.apply(v)) - integral(g, v)) <= 1e-6 * integral(g, v));
}

TEST_CASE("the operator is linear") {
  const auto& op = pipe08().op;
  const auto g = op.grid();
  std::vector<double> u(g.n), v(g.n), w(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    u[i] = x * x;
    v[i] = std::cos(3 * x);
  }
  const double a = 0.75, b = -0.5;
  for (std::size_t i = 0; i < g.n; ++i) w[i] = a * u[i] + b * v[i];
  const auto pu = op.apply(u), pv = op.apply(v), pw = op.apply(w);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double scale = std::abs(a * pu[i]) + std::abs(b * pv[i]);
    REQUIRE(std::abs(pw[i] - (a * pu[i] + b * pv[i])) <= 4 * ulp(scale));
  }
}

TEST_CASE("serial and parallel apply agree bitwise") {
  const auto& op = pipe08().op;
  std::vector<double> v(op.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.1 * std::sin(0.01 * static_cast<double>(i));
  CHECK(op.apply(v, Exec::serial) == op.apply(v, Exec::parallel));
}

TEST_CASE("fixed point") {
  const auto& d = pipe08().density;
  CHECK(d.residual <= 1e-10);
  CHECK(d.min_value > 0.0);
  CHECK(std::abs(integral(d.grid, d.values) - 1.0) <= 1e-12);
  CHECK(d.boundary_value() == d.values.front());
  CHECK(d.max_value == d.boundary_value());
  const auto second = solve_density(pipe08().op, 0.8, 4000, {}, alternate_start(d.grid));
  CHECK(sup_distance(second.values, d.values) <= 1e-9);
  CHECK(d.residual_trace.size() == static_cast<std::size_t>(d.iterations));
}

TEST_CASE("iteration cap") {
  SolverOptions opt;
  opt.max_iter = 2;
  try {
    solve_density(pipe08().op, 0.8, 4000, opt);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.trace().size() == 2);
  }
}

TEST_CASE("density is continuous in alpha at 1") {
  const DensityPipeline one(1.0, 257, 4000);
  double prev = INFINITY;
  for (double d : {0.1, 0.01, 0.001}) {
    const DensityPipeline near(1.0 - d, 257, 4000);
    const double dist = sup_distance(near.density.values, one.density.values);
    CHECK(dist < prev);
    prev = dist;
  }
  CHECK(prev <= 1e-2);
}
