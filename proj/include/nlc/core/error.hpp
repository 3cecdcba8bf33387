#pragma once

#include <stdexcept>
#include <string>

namespace nlc {

// Input violates a documented precondition (bad exponent, shape mismatch, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical guard tripped: aliasing, divergent integral, non-monotone table.
class NumericalGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Moment integral that does not converge at one end of the radial axis.
class DivergentIntegral : public NumericalGuard {
 public:
  DivergentIntegral(std::string side, double exponent)
      : NumericalGuard("divergent integral at " + side + " (local exponent " +
                       std::to_string(exponent) + ")"),
        side_(std::move(side)),
        exponent_(exponent) {}
  const std::string& side() const { return side_; }
  double exponent() const { return exponent_; }

 private:
  std::string side_;
  double exponent_;
};

// Malformed or unknown configuration entry.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nlc
