#pragma once

#include <stdexcept>
#include <string>

namespace cbias {

// Bad user-supplied configuration (unknown ids, out-of-range parameters).
// The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke a documented precondition (dimension mismatch, NaN input,
// empty ratio list, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal consistency check failed, e.g. an error far below zero that
// points to a wrong optimum value.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by ObjectiveHandle when an evaluation is attempted past the budget.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

}  // namespace cbias
