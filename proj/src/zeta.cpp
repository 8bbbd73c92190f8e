#include "lsv/zeta.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"

namespace lsv {

namespace {

// B_{2j} / (2j)!, j = 1..6
constexpr std::array<double, 6> kBernoulliOverFactorial = {
    1.0 / 12.0,      -1.0 / 720.0,           1.0 / 30240.0,
    -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0};

// Shift so the Euler-Maclaurin remainder is below 1e-16 for s <= 10.
constexpr double kShift = 12.0;

}  // namespace

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0)) {
    std::ostringstream os;
    os << "zeta: s = " << s << " must exceed 1";
    throw DomainError(os.str());
  }
  if (!(q > 0.0)) throw DomainError("hurwitz_zeta: q must be positive");
  CompensatedSum sum;
  double a = q;
  while (a < kShift) {
    sum.add(std::pow(a, -s));
    a += 1.0;
  }
  const double a_s = std::pow(a, -s);
  sum.add(a * a_s / (s - 1.0));
  sum.add(0.5 * a_s);
  // Tail terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
  double rising = s;
  double power = a_s / a;
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    sum.add(kBernoulliOverFactorial[j] * rising * power);
    rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
    power /= a * a;
  }
  return sum.value();
}

double zeta(double s) { return hurwitz_zeta(s, 1.0); }

}  // namespace lsv
