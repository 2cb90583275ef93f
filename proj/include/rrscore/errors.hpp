#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rrscore {

// Invalid model, PMF, thresholds, or CLI arguments. Maps to exit code 1.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked mathematical property failed; indicates a bug, not bad input.
// Maps to exit code 3.
struct PropertyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration too large for the configured budget. Maps to exit code 2.
struct BudgetError : std::runtime_error {
  std::uint64_t required;
  std::uint64_t budget;
  BudgetError(std::uint64_t required_in, std::uint64_t budget_in)
      : std::runtime_error("enumeration requires " + std::to_string(required_in) +
                           " weighted outcomes, budget is " + std::to_string(budget_in)),
        required(required_in),
        budget(budget_in) {}
};

}  // namespace rrscore
