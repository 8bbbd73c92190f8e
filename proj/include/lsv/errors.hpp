#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lsv {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A root finder failed to bracket or converge. Signals an internal bug for valid input.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration cap. Carries the residual trace.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, std::vector<double> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  std::vector<double> trace_;
};

class IllConditionedFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TailNotSummable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lsv
