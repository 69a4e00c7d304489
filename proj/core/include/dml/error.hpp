#pragma once

#include <stdexcept>
#include <string>

namespace dml {

/// Thrown when an argument lies outside the domain of an operation
/// (log of a non-positive number, zero polynomial, mismatched fields, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a problem violates the hypothesis of the bound it is checked
/// against, e.g. both characteristic roots being roots of unity.
class HypothesisViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The input is well formed but outside what the library can decide exactly
/// (roots of degree > 2, for instance).
class UnsupportedError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace dml
