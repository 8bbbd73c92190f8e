#pragma once

namespace lsv {

/// Hurwitz zeta sum_{k>=0} (q+k)^{-s} for real s > 1, q > 0, by Euler-Maclaurin with
/// Bernoulli corrections through B_12.
double hurwitz_zeta(double s, double q);

/// Riemann zeta on the real axis right of the pole. Throws DomainError for s <= 1.
double zeta(double s);

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace lsv
