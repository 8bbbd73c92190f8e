#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsv::acceptance {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  /// Fails for a documented reason (README, "Known failures"): a closed-form constant the
  /// numerics contradict by a factor of two, or a Monte Carlo target out of reach at n = 1e7.
  bool known = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const;
  /// True when every failing check is marked known.
  bool pass_modulo_known() const;
};

inline constexpr int kCriteria = 10;

CriterionResult run_criterion(int id);

/// Summary line followed by one indented line per check.
void print(std::ostream& os, const CriterionResult& r);

}  // namespace lsv::acceptance
