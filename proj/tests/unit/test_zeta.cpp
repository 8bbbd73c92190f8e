#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"
#include "lsv/zeta.hpp"

using namespace lsv;

TEST_CASE("zeta(2)") {
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  CHECK(std::abs(zeta(2.0) - pi2_6) <= 1e-12);
}

TEST_CASE("zeta(1.5) against a direct sum") {
  // sum_{k>=N} k^{-s} lies between N^{1-s}/(s-1) and N^{1-s}/(s-1) + N^{-s}
  const double s = 1.5;
  const long n = 10000000;
  CompensatedSum sum;
  for (long k = n - 1; k >= 1; --k) sum.add(std::pow(static_cast<double>(k), -s));
  const double base = sum.value() + std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0);
  const double z = zeta(s);
  CHECK(z >= base - 1e-12);
  CHECK(z <= base + std::pow(static_cast<double>(n), -s) + 1e-12);
}

TEST_CASE("agreement with an independent implementation") {
  for (double s : {1.0001, 1.01, 1.1, 1.25, 1.5, 2.0, 3.0, 7.5, 20.0}) CHECK(std::abs(zeta(s) - boost::math::zeta(s)) <= 1e-13 * zeta(s));
}

TEST_CASE("pole behaviour") {
  for (int j = 1; j <= 8; ++j) {
    const double s = 1.0 + std::pow(10.0, -j);
    const double e = s - 1.0;
    const double r = e * zeta(s) - 1.0 - kEulerGamma * e;
    CHECK(std::abs(r) <= 0.1 * e * e + 1e-14);
  }
}

TEST_CASE("Hurwitz zeta") {
  for (double s : {1.05, 1.25, 2.0}) {
    CHECK(hurwitz_zeta(s, 1.0) == doctest::Approx(zeta(s)).epsilon(1e-14));
    for (double q : {0.3, 1.0, 17.0, 12345.0}) {
      const double d = hurwitz_zeta(s, q) - hurwitz_zeta(s, q + 1.0);
      CHECK(d == doctest::Approx(std::pow(q, -s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("domain") {
  CHECK_THROWS_AS(zeta(1.0), DomainError);
  CHECK_THROWS_AS(zeta(0.5), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.0), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), DomainError);
}
