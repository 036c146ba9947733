#pragma once

#include <stdexcept>
#include <string>

namespace aap {

// Input outside the mathematical domain of a model function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Coverage radius collapsed to zero (or otherwise unusable downstream).
class DegenerateCoverageError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The deployment problem has an empty feasible set.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent scenario/parameter input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_relative_error)
      : std::runtime_error(what), achieved_(achieved_relative_error) {}

  double achieved_relative_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace aap
