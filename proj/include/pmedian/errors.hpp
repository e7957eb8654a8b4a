#pragma once

#include <stdexcept>

namespace pmedian {

// Malformed data: dimension mismatch, out-of-range index, unreadable input.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The caller broke an operation's precondition.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// An argument lies outside the operation's domain.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Work refused because it would exceed a configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pmedian
