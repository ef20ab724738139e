#pragma once

#include <stdexcept>
#include <string>

namespace cs {

/// Exact subset enumeration would exceed the combinatorial budget.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested generator targets cannot be met.
class InfeasibleError : public std::runtime_error {
public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// A theorem precondition does not hold (e.g. delta_s >= 1).
class ConditionError : public std::runtime_error {
public:
  explicit ConditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Signal has no usable s-term part (x_s = 0).
class DegenerateSignalError : public std::runtime_error {
public:
  explicit DegenerateSignalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cs
