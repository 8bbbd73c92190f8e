#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lsv/errors.hpp"
#include "lsv/potential.hpp"

using namespace lsv;

TEST_CASE("built-in potentials") {
  CHECK(Potential::builtin("x")(0.3) == 0.3);
  CHECK(Potential::builtin("x2")(0.5) == 0.25);
  CHECK(Potential::builtin("sqrt")(0.25) == 0.5);
  CHECK(Potential::builtin("cos")(0.0) == 1.0);
  CHECK(Potential::builtin("cosm1")(0.0) == 0.0);
  CHECK(Potential::builtin("cosm1").centered(0.5) == doctest::Approx(-2.0));
  const auto c = Potential::builtin("const:2.5");
  CHECK(c(0.7) == 2.5);
  CHECK(c.centered(0.7) == 0.0);
  CHECK_THROWS(Potential::builtin("nope"));
  CHECK_THROWS(Potential::builtin("const:abc"));
  for (const char* t : {"x", "x2", "sqrt", "cos", "cosm1", "const:3"}) CHECK(check_holder_at_zero(Potential::builtin(t)).holds);
  CHECK(Potential::square_root().holder_exponent() == 0.5);
}

TEST_CASE("expressions") {
  CHECK(compile_expression("2+3*x^2")(2.0) == 14.0);
  CHECK(compile_expression("-x^2")(2.0) == -4.0);
  CHECK(compile_expression("2^3^2")(0.0) == 512.0);
  CHECK(compile_expression("(1 - x) / 4")(0.2) == doctest::Approx(0.2));
  CHECK(compile_expression("sin(pi*x)")(0.5) == doctest::Approx(1.0));
  CHECK(compile_expression("exp(log(x)) + abs(-1) + sqrt(4) + cos(0)")(3.0) == doctest::Approx(7.0));
  CHECK(compile_expression("1e-3*x")(1000.0) == doctest::Approx(1.0));
  for (const char* bad : {"", "x+", "(x", "x)", "foo(x)", "y", "2**x", "1..2"}) CHECK_THROWS(compile_expression(bad));
  const auto p = Potential::from_expression("x - 0.3*x^2", 1.0, 1.0);
  CHECK(p.value_at_zero() == 0.0);
  CHECK(p(1.0) == doctest::Approx(0.7));
  CHECK(check_holder_at_zero(p).holds);
  CHECK_FALSE(check_holder_at_zero(Potential::from_expression("sqrt(x)", 1.0, 1.0)).holds);
}

TEST_CASE("shifts and combinations") {
  const auto x = Potential::identity();
  const auto s = x.shifted(1000.0);
  for (double t : {0.0, 1e-9, 0.3, 1.0}) {
    CHECK(s.centered(t) == x.centered(t));
    CHECK(s(t) == 1000.0 + t);
  }
  const auto c = Potential::combine(1.0, x, -2.0, Potential::square(), "x-2x2");
  CHECK(c.name() == "x-2x2");
  CHECK(c(0.5) == 0.0);
  CHECK(c.value_at_zero() == 0.0);
  const auto w = Potential::combine(1.0, x, 1.0, Potential::square_root(), "w");
  CHECK(w.holder_exponent() == 0.5);
}
