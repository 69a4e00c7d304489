#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dml/exact/quadratic.hpp"

namespace dml {

/// The least n with x^n = 1, if any.  In degree <= 2 only n in
/// {1, 2, 3, 4, 6} can occur, so those are the only candidates.
std::optional<int> root_of_unity_order(const FieldElement& x);

/// A published count bound the observed count is compared against.
struct BoundLine {
  std::string statement;
  Integer bound;
  std::size_t observed = 0;
  bool within = false;
};

/// The equation a alpha^m + b beta^m + 1 = 0 in integers m.
struct UnitEquationProblem {
  FieldElement a, b, alpha, beta;

  /// Throws DomainError for zero alpha or beta and HypothesisViolation when
  /// both are roots of unity.
  void validate() const;
};

/// One side (m > M or m < -M) of a completeness certificate: the named term
/// dominates the other two at the named embedding for every m on that side.
struct DominanceWitness {
  std::string side;
  std::string dominant_term;
  std::string place;
};

struct UnitEquationReport {
  std::vector<long> solutions;
  long range_lo = 0;
  long range_hi = 0;
  std::optional<std::pair<DominanceWitness, DominanceWitness>> certificate;
  BoundLine bound;
};

UnitEquationReport solve_unit_equation(const UnitEquationProblem& problem, long range);

struct BinaryRecurrence {
  FieldElement nu1, nu0, u0, u1;
};

struct CharacteristicRoots {
  FieldElement alpha1, alpha2;
  Field field;
};

/// Roots of z^2 - nu1 z - nu0.  Throws UnsupportedError when they do not
/// lie in a field of degree <= 2.
CharacteristicRoots characteristic_roots(const BinaryRecurrence& r);

/// Throws HypothesisViolation unless some root is not a root of unity and,
/// for distinct roots, their ratio is not one either.
void check_binary_hypothesis(const BinaryRecurrence& r);

/// u_m for lo <= m <= hi, extended backwards with nu0 != 0.
std::vector<FieldElement> binary_terms(const BinaryRecurrence& r, long lo, long hi);

struct CountReport {
  std::vector<long> solutions;
  long range_lo = 0;
  long range_hi = 0;
  BoundLine bound;
  std::vector<std::string> notes;
};

CountReport multiplicity_count(const BinaryRecurrence& r, const FieldElement& c, long lo, long hi);

/// v_{m+3} = mu2 v_{m+2} + mu1 v_{m+1} + mu0 v_m.
struct TernaryRecurrence {
  FieldElement mu2, mu1, mu0, v0, v1, v2;
};

/// Checks mu0 != 0, the initial values, and the root-ratio condition.  The
/// roots are found when mu is rational and the cubic has a rational root;
/// anything else throws UnsupportedError.
void check_ternary_hypothesis(const TernaryRecurrence& t);

std::vector<FieldElement> ternary_terms(const TernaryRecurrence& t, long lo, long hi);

CountReport ternary_zero_count(const TernaryRecurrence& t, long lo, long hi);

/// 2^57.
Integer multiplicity_bound();

}  // namespace dml
