#ifndef NORMNUM_ERRORS_HPP
#define NORMNUM_ERRORS_HPP

#include "normnum/rational.hpp"

#include <stdexcept>
#include <string>

namespace normnum {

// Enumeration would exceed the configured ceiling. Carries the certified
// measure bound for the set that was not built, so callers can fall back to
// tail accounting.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(std::string what, Rat bound)
        : std::runtime_error(std::move(what)), bound_(std::move(bound)) {}

    const Rat& bound() const { return bound_; }

  private:
    Rat bound_;
};

// Digit extraction asked for more digits than the current iteration count
// supports. Carries the smallest iteration count that would suffice.
class InsufficientIterations : public std::runtime_error {
  public:
    InsufficientIterations(std::string what, long required)
        : std::runtime_error(std::move(what)), required_(required) {}

    long required() const { return required_; }

  private:
    long required_;
};

// An exact certificate that must hold by construction failed to verify.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace normnum

#endif
