#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lsv/grid.hpp"
#include "lsv/induced.hpp"
#include "lsv/numerics.hpp"

using namespace lsv;

TEST_CASE("inverse branches, examples") {
  const InducedSystem s1(MapParams::lsv(1.0), 100);
  for (double x : {0.5, 0.6, 0.75, 1.0}) CHECK(s1.inverse_branch(1, x) == 0.5 * (1.0 + x));
  CHECK(s1.inverse_branch(2, 1.0) == 0.75);
  CHECK(s1.weight(1, 0.7) == 0.5);
  const InducedSystem s8(MapParams::lsv(0.8), 100);
  CHECK(s8.weight(1, 0.9) == 0.5);
  CHECK(s8.inverse_branch(2, 1.0) == 0.75);
}

TEST_CASE("weight matches a finite difference of the inverse branch") {
  for (double a : {0.8, 1.0, 1.25}) {
    const InducedSystem s(MapParams::lsv(a), 100);
    for (std::size_t k : {2u, 3u, 10u, 50u}) {
      for (double x : {0.55, 0.7, 0.95}) {
        const double h = 1e-5;
        const double fd = (s.inverse_branch(k, x + h) - s.inverse_branch(k, x - h)) / (2 * h);
        CHECK(std::abs(fd - s.weight(k, x)) <= 1e-6 * s.weight(k, x));
        const auto [pre, w] = s.inverse_and_weight(k, x);
        CHECK(pre == s.inverse_branch(k, x));
        CHECK(w == s.weight(k, x));
      }
    }
  }
}

TEST_CASE("F^k undoes the inverse branch") {
  for (double a : {0.8, 1.0, 1.25}) {
    const auto p = MapParams::lsv(a);
    const InducedSystem s(p, 100);
    for (std::size_t k = 1; k <= 50; ++k) {
      for (double x : {0.5, 0.61, 0.83, 1.0}) {
        double z = s.inverse_branch(k, x);
        CHECK(z >= s.cylinder(k).lo - 1e-15);
        CHECK(z <= s.cylinder(k).hi + 1e-15);
        double w = 2.0 * z - 1.0;
        for (std::size_t i = 1; i < k; ++i) w = left_branch(p, w);
        CHECK(std::abs(w - x) <= 1e-10);
        if (x < 1.0) {
          for (std::size_t i = 0; i < k; ++i) z = eval_map(p, z);
          CHECK(std::abs(z - x) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("cylinders") {
  const InducedSystem s(MapParams::lsv(1.0), 1000);
  CHECK(s.cylinder(1).lo == 0.75);
  CHECK(s.cylinder(1).hi == 1.0);
  CHECK(s.cylinder(2).hi == 0.75);
  for (double a : {0.5, 0.8, 1.0, 1.25}) {
    const InducedSystem t(MapParams::lsv(a), 5000);
    CompensatedSum len;
    for (std::size_t k = 1; k <= t.k_max(); ++k) {
      len.add(t.cylinder(k).length());
      if (k > 1) REQUIRE(t.cylinder(k).hi == t.cylinder(k - 1).lo);
    }
    len.add(t.residual_mass());
    CHECK(std::abs(len.value() - 0.5) <= 4 * ulp(0.5));
    CHECK(t.residual_mass() == 0.5 * t.y()[t.k_max()]);
  }
}

TEST_CASE("weights integrate to cylinder lengths") {
  for (double a : {0.8, 1.0}) {
    const InducedSystem s(MapParams::lsv(a), 2000);
    for (std::size_t k : {1u, 2u, 5u, 10u, 100u, 1000u}) {
      std::vector<double> xs, ws;
      for (int c = 0; c < 64; ++c) gauss_legendre_8(0.5 + c / 128.0, 0.5 + (c + 1) / 128.0, xs, ws);
      CompensatedSum sum;
      for (std::size_t i = 0; i < xs.size(); ++i) sum.add(ws[i] * s.weight(k, xs[i]));
      CHECK(std::abs(sum.value() - s.cylinder(k).length()) <= 1e-8 * s.cylinder(k).length());
    }
  }
}

TEST_CASE("weight decay exponent") {
  for (double a : {0.8, 1.0, 1.25}) {
    const InducedSystem s(MapParams::lsv(a), 100);
    const double slope = weight_decay_slope(s, 100, 10000);
    const double expect = -(1.0 + 1.0 / a);
    CHECK(std::abs(slope - expect) <= 0.02 * std::abs(expect));
    CHECK(s.truncation_bound() > 0.0);
  }
}

TEST_CASE("distortion conditions spot check") {
  const auto r = spot_check_conditions({0.8, 1.0, 1.25}, 2000, 33);
  CHECK(r.a1_holds);
  for (const auto& row : r.rows) CHECK(row.a1_max_weight <= 0.5);
  CHECK(std::isfinite(r.a2_spread));
  CHECK(std::isfinite(r.a3_spread));
  CHECK(r.a7_cauchy);
}

TEST_CASE("branch cache: serial and parallel agree bitwise") {
  const InducedSystem s(MapParams::lsv(0.8), 500);
  const UniformGrid g(0.5, 1.0, 129);
  const BranchCache a(s, g, Exec::serial);
  const BranchCache b(s, g, Exec::parallel);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t k = 1; k <= s.k_max(); ++k) REQUIRE(a.g(i, k) == b.g(i, k));
    for (std::size_t j = 0; j < s.k_max(); ++j) REQUIRE(a.z(i, j) == b.z(i, j));
    REQUIRE(a.tail_weight(i) == b.tail_weight(i));
  }
  CHECK(a.tail_point() == b.tail_point());
  CHECK(a.round_trip_error(50) <= 1e-10);
  CHECK(a.preimage(0, 1) == 0.75);
}
