#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lsv/density.hpp"
#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"
#include "lsv/tail.hpp"

using namespace lsv;

namespace {

struct Setup {
  DensityPipeline pipe;
  YSequence y;
  explicit Setup(double a) : pipe(a, 1025, 10000), y(y_sequence(MapParams::lsv(a), 100000)) {}
};

const Setup& at(double a) {
  static const Setup s08(0.8), s1(1.0);
  return a == 1.0 ? s1 : s08;
}

}  // namespace

TEST_CASE("tail masses") {
  for (double a : {0.8, 1.0}) {
    const auto& s = at(a);
    CHECK(tail_mass(s.pipe.density, s.y, 0) == doctest::Approx(1.0).epsilon(1e-12));
    double prev = 2.0;
    for (std::size_t n = 0; n <= 20000; ++n) {
      const double t = tail_mass(s.pipe.density, s.y, n);
      REQUIRE(t < prev);
      REQUIRE(t > 0.0);
      prev = t;
    }
    for (std::size_t k : {1u, 7u, 300u}) {
      const double m = cylinder_mass(s.pipe.density, s.y, k);
      CHECK(std::abs(m - (tail_mass(s.pipe.density, s.y, k - 1) - tail_mass(s.pipe.density, s.y, k))) <= 1e-12);
    }
  }
}

TEST_CASE("power law recovered from exact data") {
  std::vector<double> lx, ly;
  for (auto n : log_spaced_integers(100, 10000, 40)) {
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(0.37 * std::pow(static_cast<double>(n), -1.25)));
  }
  const auto f = fit_line(lx, ly);
  CHECK(std::abs(std::exp(f.intercept) - 0.37) <= 1e-6);
  CHECK(std::abs(-f.slope - 1.25) <= 1e-6);
}

TEST_CASE("fitted exponent and constant") {
  for (double a : {0.8, 1.0}) {
    const auto& s = at(a);
    const auto prof = fit_tail(s.pipe.density, s.y, 10000, 100000);
    CHECK(std::abs(prof.fitted_exponent - 1.0 / a) <= 0.02 / a);
    const auto pred = predicted_tail_constant(s.pipe.density, MapParams::lsv(a));
    CHECK(pred.measure == doctest::Approx(2.0 * pred.stated).epsilon(1e-15));
    CHECK(std::abs(prof.pinned_c - pred.measure) <= 0.03 * pred.measure);
    CHECK(prof.model(50000.0) == doctest::Approx(tail_mass(s.pipe.density, s.y, 50000)).epsilon(1e-3));
    const auto x3 = check_x3_bounds(prof, prof.pinned_c, 1.0 / a);
    CHECK(x3.holds);
    CHECK(x3.minimal_d < 1.01);
  }
}

TEST_CASE("too few fit points") {
  const auto& s = at(0.8);
  CHECK_THROWS_AS(fit_tail(s.pipe.density, s.y, 100, 110), IllConditionedFit);
}

TEST_CASE("Kac sum and cylinder masses") {
  const auto& s = at(0.8);
  const std::size_t n = 5000;
  CompensatedSum partial;
  for (std::size_t k = 0; k < n; ++k) partial.add(tail_mass(s.pipe.density, s.y, k));
  CHECK(std::abs(kac_from_cylinders(s.pipe.density, s.y, n) - partial.value()) <= 1e-8);

  std::vector<double> tails;
  for (std::size_t k = 0; k <= n; ++k) tails.push_back(tail_mass(s.pipe.density, s.y, k));
  const auto abel = abel_identity(tails);
  CHECK(abel.gap_ulps <= 4.0);

  const auto prof = fit_tail(s.pipe.density, s.y, 100, 10000);
  const auto kac = kac_sum(s.pipe.density, s.y, 10000, prof);
  CHECK(kac.finite);
  CHECK(kac.total > kac.partial_sum);
  CHECK(kac.total == doctest::Approx(kac.partial_sum + kac.tail_correction).epsilon(1e-14));
}

TEST_CASE("Kac sum grows like c_1 log n at alpha = 1") {
  const auto& s = at(1.0);
  const auto prof = fit_tail(s.pipe.density, s.y, 10000, 100000);
  const auto kac = kac_sum(s.pipe.density, s.y, 100000, prof);
  CHECK_FALSE(kac.finite);
  CHECK(std::abs(kac.growth_coefficient - prof.pinned_c) <= 0.03 * prof.pinned_c);
}

TEST_CASE("X3 bounds on an exact power law") {
  TailProfile p;
  for (std::int64_t n : {10, 100, 1000, 10000}) {
    p.n_values.push_back(n);
    p.tail_masses.push_back(0.5 * std::pow(static_cast<double>(n), -1.25));
  }
  const auto r = check_x3_bounds(p, 0.5, 1.25);
  CHECK(r.minimal_d == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.holds);
  CHECK(check_x3_bounds(p, 0.25, 1.25).minimal_d == doctest::Approx(2.0).epsilon(1e-12));
}
