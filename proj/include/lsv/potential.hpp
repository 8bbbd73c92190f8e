#pragma once

#include <functional>
#include <memory>
#include <string>

namespace lsv {

/// A Hölder observable on [0,1], stored as phi(0) plus the centred part phi - phi(0).
/// Every response quantity only sees the centred part, so shifting phi by a constant
/// leaves it bit-for-bit unchanged.
class Potential {
 public:
  using Fn = std::function<double(double)>;

  Potential(std::string name, Fn centered, double value_at_zero, double holder_exponent, double holder_constant);

  const std::string& name() const noexcept { return name_; }
  double operator()(double x) const { return value_at_zero_ + centered_(x); }
  /// phi(x) - phi(0).
  double centered(double x) const { return centered_(x); }
  double value_at_zero() const noexcept { return value_at_zero_; }
  double holder_exponent() const noexcept { return eta_; }
  double holder_constant() const noexcept { return c_; }

  /// phi + c.
  Potential shifted(double c) const;
  /// a*phi + b*psi, with the weaker Hölder data.
  static Potential combine(double a, const Potential& phi, double b, const Potential& psi, std::string name);

  static Potential constant(double c);
  static Potential identity();       // x
  static Potential square();         // x^2
  static Potential square_root();    // sqrt(x), eta = 1/2
  static Potential cos_2pi();        // cos(2 pi x)
  static Potential cos_2pi_minus_one();
  /// Built-in by tag: "x", "x2", "sqrt", "cos", "cosm1", or "const:<c>".
  static Potential builtin(const std::string& tag);
  /// User expression in x, e.g. "x - 0.3*x^2"; eta and C are declared by the caller.
  static Potential from_expression(const std::string& expr, double holder_exponent, double holder_constant);

 private:
  std::string name_;
  Fn centered_;
  double value_at_zero_;
  double eta_;
  double c_;
};

struct HolderCheck {
  double worst_ratio = 0.0;  // max |phi(x) - phi(0)| / (C x^eta)
  bool holds = false;
};

/// Spot check of |phi(x) - phi(0)| <= C x^eta on n log- and linearly spaced points.
HolderCheck check_holder_at_zero(const Potential& phi, int n = 10000);

/// Parses and compiles an arithmetic expression in the variable x.
/// Grammar: + - * / ^, unary minus, parentheses, numbers, pi, and the functions
/// sqrt cos sin exp log abs.
std::function<double(double)> compile_expression(const std::string& expr);

}  // namespace lsv
