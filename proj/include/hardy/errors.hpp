#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Gamma evaluated at a non-positive integer.
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// Integral does not exist for the requested weight (e.g. |x|^s with s <= -n).
class DivergenceError : public DomainError {
 public:
  explicit DivergenceError(const std::string& what) : DomainError(what) {}
};

/// Quadrature failed to settle within its truncation or refinement budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hardy
