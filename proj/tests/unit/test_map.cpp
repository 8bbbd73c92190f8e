#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lsv/errors.hpp"
#include "lsv/map.hpp"
#include "lsv/numerics.hpp"

using namespace lsv;

namespace {
const double kAlphas[] = {0.5, 0.8, 1.0, 1.25};
}

TEST_CASE("map parameters") {
  const auto p = MapParams::lsv(0.8);
  CHECK(p.b_alpha == std::exp2(0.8));
  CHECK(p.epsilon == doctest::Approx(0.4));
  CHECK_THROWS_AS(MapParams::lsv(0.0), DomainError);
  CHECK_THROWS_AS(MapParams::lsv(-1.0), DomainError);
  CHECK_THROWS_AS(MapParams::lsv(0.8, 0.9), DomainError);
}

TEST_CASE("eval_map examples") {
  CHECK(eval_map(MapParams::lsv(1.0), 0.0) == 0.0);
  for (double a : kAlphas) CHECK(eval_map(MapParams::lsv(a), 0.5) == 1.0);
  const long double x = 0.25L;
  const long double ref = x + std::pow(2.0L, 0.8L) * std::pow(x, 1.8L);
  CHECK(std::abs(eval_map(MapParams::lsv(0.8), 0.25) - static_cast<double>(ref)) <= 2 * ulp(0.5));
  CHECK(eval_map(MapParams::lsv(1.0), 0.75) == 0.5);
  CHECK_THROWS_AS(eval_map(MapParams::lsv(1.0), -1e-12), DomainError);
  CHECK_THROWS_AS(eval_map(MapParams::lsv(1.0), 1.0 + 1e-12), DomainError);
}

TEST_CASE("inverse left branch examples") {
  for (double a : kAlphas) {
    const auto p = MapParams::lsv(a);
    CHECK(inverse_left_branch(p, 0.0) == 0.0);
    CHECK(inverse_left_branch(p, 1.0) == 0.5);
  }
  CHECK(inverse_left_branch(MapParams::lsv(1.0), 0.5) == doctest::Approx((std::sqrt(5.0) - 1.0) / 4.0).epsilon(1e-15));
}

TEST_CASE("branch inversion round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double a : kAlphas) {
    const auto p = MapParams::lsv(a);
    double worst = 0.0;
    double prev_x = -1.0, prev_y = -1.0;
    for (int i = 0; i < 10000; ++i) {
      const double y = u(rng);
      const double x = inverse_left_branch(p, y);
      worst = std::max(worst, std::abs(left_branch(p, x) - y));
      CHECK(std::abs(eval_map(p, inverse_right_branch(y)) - y) <= ulp(1.0));
      if (prev_y >= 0.0 && y > prev_y) CHECK(x >= prev_x);
      prev_x = x;
      prev_y = y;
    }
    CHECK(worst <= kInverseTolerance);
  }
}

TEST_CASE("left derivative has zero remainder") {
  for (double a : kAlphas) {
    const auto p = MapParams::lsv(a);
    for (int i = 1; i <= 1000; ++i) {
      const double x = 0.5 * i / 1000.0;
      const double expect = 1.0 + p.b_alpha * (1.0 + a) * std::pow(x, a);
      CHECK(std::abs(left_derivative(p, x) - expect) <= 4 * ulp(expect));
    }
  }
}

TEST_CASE("branch interface") {
  const auto p = MapParams::lsv(0.8);
  const auto br = lsv_branches(p);
  REQUIRE(br.size() == 2);
  CHECK(br[0].forward(0.0) == 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double x = br[0].domain.lo + (br[0].domain.hi - br[0].domain.lo) * i / 100.0;
    CHECK(std::abs(br[0].inverse(br[0].forward(x)) - x) <= 1e-14);
    const double x2 = br[1].domain.lo + (br[1].domain.hi - br[1].domain.lo) * i / 100.0;
    CHECK(std::abs(br[1].inverse(br[1].forward(x2)) - x2) <= 1e-15);
    CHECK(std::abs(br[1].derivative(x2)) > 1.0);
  }
}

TEST_CASE("y sequence") {
  const auto p1 = MapParams::lsv(1.0);
  const auto y1 = y_sequence(p1, 1);
  REQUIRE(y1.values.size() == 2);
  CHECK(y1[0] == 1.0);
  CHECK(y1[1] == 0.5);
  const auto y2 = y_sequence(p1, 2);
  CHECK(y2[2] == doctest::Approx((std::sqrt(5.0) - 1.0) / 4.0).epsilon(1e-15));
  for (double a : kAlphas) {
    const auto y = y_sequence(MapParams::lsv(a), 20000);
    CHECK(y[1] == 0.5);
    for (std::size_t n = 1; n <= y.n_max(); ++n) REQUIRE(y[n] < y[n - 1]);
    CHECK(y[y.n_max()] > 0.0);
    CHECK(y[y.n_max()] < 1e-2);
  }
}

TEST_CASE("y asymptotics") {
  SUBCASE("scaled limit at n = 1e5") {
    for (double a : {0.8, 1.0}) {
      const auto p = MapParams::lsv(a);
      const auto y = y_sequence(p, 100000);
      const double s = y[100000] * std::pow(a * p.b_alpha * 1e5, 1.0 / a);
      CHECK(std::abs(s - 1.0) <= 0.02);
    }
  }
  SUBCASE("deviation shrinks as the window moves out") {
    for (double a : {0.5, 1.0}) {
      const auto p = MapParams::lsv(a);
      const auto y = y_sequence(p, 100000);
      const auto r1 = check_y_asymptotics(y, p, 1000, 10000);
      const auto r2 = check_y_asymptotics(y, p, 10000, 100000);
      CHECK(r2.max_scaled_deviation < r1.max_scaled_deviation);
      REQUIRE(r1.fitted_decay_exponent.has_value());
      CHECK(*r1.fitted_decay_exponent < 0.0);
    }
  }
  SUBCASE("single point window") {
    const auto p = MapParams::lsv(1.0);
    const auto y = y_sequence(p, 2000);
    const auto r = check_y_asymptotics(y, p, 1500, 1500);
    CHECK(r.points == 1);
    CHECK_FALSE(r.fitted_decay_exponent.has_value());
  }
  SUBCASE("window outside the sequence") {
    const auto p = MapParams::lsv(1.0);
    const auto y = y_sequence(p, 100);
    CHECK_THROWS_AS(check_y_asymptotics(y, p, 10, 1000), DomainError);
  }
}
