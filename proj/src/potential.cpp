#include "lsv/potential.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lsv/errors.hpp"

namespace lsv {

Potential::Potential(std::string name, Fn centered, double value_at_zero, double holder_exponent,
                     double holder_constant)
    : name_(std::move(name)), centered_(std::move(centered)), value_at_zero_(value_at_zero),
      eta_(holder_exponent), c_(holder_constant) {
  if (!(eta_ > 0.0)) throw DomainError("Potential: Hölder exponent must be positive");
  if (!(c_ >= 0.0)) throw DomainError("Potential: Hölder constant must be nonnegative");
}

Potential Potential::shifted(double c) const {
  return Potential(name_ + "-shift", centered_, value_at_zero_ + c, eta_, c_);
}

Potential Potential::combine(double a, const Potential& phi, double b, const Potential& psi, std::string name) {
  auto f = phi.centered_;
  auto g = psi.centered_;
  const double eta = std::min(phi.eta_, psi.eta_);
  return Potential(std::move(name), [a, b, f, g](double x) { return a * f(x) + b * g(x); },
                   a * phi.value_at_zero_ + b * psi.value_at_zero_, eta,
                   std::abs(a) * phi.c_ + std::abs(b) * psi.c_);
}

Potential Potential::constant(double c) {
  return Potential("const", [](double) { return 0.0; }, c, 1.0, 0.0);
}
Potential Potential::identity() {
  return Potential("x", [](double x) { return x; }, 0.0, 1.0, 1.0);
}
Potential Potential::square() {
  return Potential("x2", [](double x) { return x * x; }, 0.0, 1.0, 1.0);
}
Potential Potential::square_root() {
  return Potential("sqrt", [](double x) { return std::sqrt(x); }, 0.0, 0.5, 1.0);
}
Potential Potential::cos_2pi() {
  // cos(2 pi x) - 1 = -2 sin^2(pi x), free of cancellation near 0
  return Potential("cos", [](double x) { const double s = std::sin(std::numbers::pi * x); return -2.0 * s * s; },
                   1.0, 1.0, 2.0 * std::numbers::pi);
}
Potential Potential::cos_2pi_minus_one() {
  Potential p = cos_2pi().shifted(-1.0);
  p.name_ = "cosm1";
  return p;
}

Potential Potential::builtin(const std::string& tag) {
  if (tag == "x") return identity();
  if (tag == "x2") return square();
  if (tag == "sqrt") return square_root();
  if (tag == "cos") return cos_2pi();
  if (tag == "cosm1") return cos_2pi_minus_one();
  if (tag.rfind("const:", 0) == 0) return constant(std::stod(tag.substr(6)));
  throw DomainError("unknown potential tag '" + tag + "'");
}

Potential Potential::from_expression(const std::string& expr, double holder_exponent, double holder_constant) {
  auto f = compile_expression(expr);
  const double f0 = f(0.0);
  if (!std::isfinite(f0)) throw DomainError("potential expression is not finite at 0");
  return Potential(expr, [f, f0](double x) { return f(x) - f0; }, f0, holder_exponent, holder_constant);
}

HolderCheck check_holder_at_zero(const Potential& phi, int n) {
  HolderCheck h;
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    for (double x : {t, std::pow(10.0, -12.0 * (1.0 - t))}) {
      const double bound = phi.holder_constant() * std::pow(x, phi.holder_exponent());
      const double v = std::abs(phi.centered(x));
      if (v == 0.0) continue;
      h.worst_ratio = std::max(h.worst_ratio, bound > 0.0 ? v / bound : INFINITY);
    }
  }
  h.holds = h.worst_ratio <= 1.0 + 1e-12;
  return h;
}

namespace {

using Node = std::function<double(double)>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Node parse() {
    Node n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("expression: " + what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Node expr() {
    Node lhs = term();
    for (;;) {
      if (eat('+')) {
        Node r = term();
        lhs = [lhs, r](double x) { return lhs(x) + r(x); };
      } else if (eat('-')) {
        Node r = term();
        lhs = [lhs, r](double x) { return lhs(x) - r(x); };
      } else {
        return lhs;
      }
    }
  }

  Node term() {
    Node lhs = unary();
    for (;;) {
      if (eat('*')) {
        Node r = unary();
        lhs = [lhs, r](double x) { return lhs(x) * r(x); };
      } else if (eat('/')) {
        Node r = unary();
        lhs = [lhs, r](double x) { return lhs(x) / r(x); };
      } else {
        return lhs;
      }
    }
  }

  Node unary() {
    if (eat('-')) {
      Node r = unary();
      return [r](double x) { return -r(x); };
    }
    if (eat('+')) return unary();
    return power();
  }

  // right associative; binds tighter than unary minus on its left operand
  Node power() {
    Node base = primary();
    if (eat('^')) {
      Node e = unary();
      return [base, e](double x) { return std::pow(base(x), e(x)); };
    }
    return base;
  }

  Node primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (eat('(')) {
      Node n = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return [v](double) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "x") return [](double x) { return x; };
      if (id == "pi") return [](double) { return std::numbers::pi; };
      double (*fn)(double) = nullptr;
      if (id == "sqrt") fn = [](double v) { return std::sqrt(v); };
      else if (id == "cos") fn = [](double v) { return std::cos(v); };
      else if (id == "sin") fn = [](double v) { return std::sin(v); };
      else if (id == "exp") fn = [](double v) { return std::exp(v); };
      else if (id == "log") fn = [](double v) { return std::log(v); };
      else if (id == "abs") fn = [](double v) { return std::abs(v); };
      if (!fn) fail("unknown identifier '" + id + "'");
      if (!eat('(')) fail("expected '(' after " + id);
      Node arg = expr();
      if (!eat(')')) fail("missing ')'");
      return [fn, arg](double x) { return fn(arg(x)); };
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

std::function<double(double)> compile_expression(const std::string& expr) {
  if (expr.empty()) throw DomainError("expression: empty");
  return Parser(expr).parse();
}

}  // namespace lsv
