#pragma once

#include <stdexcept>
#include <string>

namespace demon {

/// An exact computation refused because its enumeration would exceed the
/// configured budget. Never converted into an approximation.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A checked invariant failed during a run (e.g. a witness did not validate).
class PropertyViolation : public std::runtime_error {
 public:
  explicit PropertyViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace demon
