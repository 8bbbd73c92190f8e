#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lsv/density.hpp"
#include "lsv/errors.hpp"
#include "lsv/orbit.hpp"
#include "lsv/ulam.hpp"

using namespace lsv;

TEST_CASE("ulam matrix is stochastic and the density converges") {
  const DensityPipeline ref(0.8, 1025, 10000);
  const auto u1 = ulam_oracle(MapParams::lsv(0.8), 1024);
  const auto u2 = ulam_oracle(MapParams::lsv(0.8), 2048);
  CHECK(u1.max_row_sum_error <= 1e-12);
  CHECK(u2.max_row_sum_error <= 1e-12);
  double mass = 0.0;
  for (double v : u1.values) mass += v * 2.0 * u1.cell_width();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  const double g1 = l1_gap(u1, ref.density), g2 = l1_gap(u2, ref.density);
  CHECK(g1 <= 5e-3);
  CHECK(g2 / g1 >= 0.4);
  CHECK(g2 / g1 <= 0.6);
}

TEST_CASE("cell count below the minimum") {
  CHECK_THROWS_AS(ulam_oracle(MapParams::lsv(0.8), 16), DomainError);
}

TEST_CASE("induced orbit visits cells in proportion to the density") {
  const DensityPipeline ref(0.8, 513, 4000);
  const std::int64_t returns = 2000000;
  const auto s = sample_induced(0.8, returns, 11);
  REQUIRE_FALSE(s.capped);
  constexpr int cells = 16, batches = 40;
  const std::size_t per = s.points.size() / batches;
  const auto f = ref.density.function();
  for (int c = 0; c < cells; ++c) {
    const double lo = 0.5 + 0.5 * c / cells, hi = 0.5 + 0.5 * (c + 1) / cells;
    const double expect = lambda_tilde_integral(f, lo, hi);
    std::vector<double> freq;
    for (int b = 0; b < batches; ++b) {
      std::size_t hit = 0;
      for (std::size_t i = b * per; i < (b + 1) * per; ++i) hit += s.points[i] >= lo && s.points[i] < hi;
      freq.push_back(static_cast<double>(hit) / static_cast<double>(per));
    }
    const auto st = summarize(freq);
    CHECK(std::abs(st.mean - expect) <= 3 * st.std_error);
  }
}
