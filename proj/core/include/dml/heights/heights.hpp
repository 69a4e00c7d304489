#pragma once

#include <span>
#include <string>
#include <vector>

#include "dml/exact/interval.hpp"
#include "dml/exact/quadratic.hpp"
#include "dml/heights/places.hpp"

namespace dml {

/// A point of P^{n-1}(K), n >= 2.  Equality is proportionality over K.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(std::vector<FieldElement> coords);
  ProjectivePoint(std::initializer_list<FieldElement> coords)
      : ProjectivePoint(std::vector<FieldElement>(coords)) {}

  const std::vector<FieldElement>& coords() const { return coords_; }
  const FieldElement& operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }
  const Field& field() const { return field_; }

  /// Scaled so the first nonzero coordinate is 1.
  ProjectivePoint normalized() const;
  std::string to_string() const;

  friend bool operator==(const ProjectivePoint& x, const ProjectivePoint& y);

 private:
  std::vector<FieldElement> coords_;
  Field field_;
};

/// c1*x1 + c2*x2 with (c1, c2) != (0, 0).
class BinaryLinearForm {
 public:
  BinaryLinearForm(FieldElement c1, FieldElement c2);

  const FieldElement& c1() const { return c1_; }
  const FieldElement& c2() const { return c2_; }
  const Field& field() const { return field_; }
  FieldElement operator()(const FieldElement& x1, const FieldElement& x2) const { return c1_ * x1 + c2_ * x2; }
  std::string to_string() const;

  friend bool operator==(const BinaryLinearForm&, const BinaryLinearForm&) = default;

 private:
  FieldElement c1_, c2_;
  Field field_;
};

/// The three forms x1, x2, x1 + x2.
enum class FormId { L1, L2, L3 };

BinaryLinearForm form_of(FormId id);
FieldElement evaluate(FormId id, const FieldElement& x1, const FieldElement& x2);
std::string to_string(FormId id);
FormId parse_form_id(std::string_view name);

/// H = radicand^(1/root), exactly.  root is 2 over Q and imaginary
/// quadratic fields, 4 over real quadratic fields.
struct ExactHeight {
  Rational radicand;
  unsigned long root = 1;

  Interval enclose(long bits) const;
  Interval log(long bits) const;
  /// Exact value when the radicand is a perfect power.
  std::optional<Rational> exact() const;
};

/// Height of the coefficient vector (not all zero; a single entry is allowed).
ExactHeight exact_height(std::span<const FieldElement> coords);

/// Product over the finite places of max_i |a_i|_v raised to [K:Q].
Rational finite_height_part(std::span<const FieldElement> coords);

Interval height_point(const ProjectivePoint& x, long bits);
Interval log_height_point(const ProjectivePoint& x, long bits);
Interval height_linear_form(const BinaryLinearForm& form, long bits);
Interval height_linear_form(std::span<const FieldElement> coeffs, long bits);
Interval log_height_linear_form(const BinaryLinearForm& form, long bits);
/// Height of a coefficient sequence, e.g. of a polynomial.
Interval height_coefficients(std::span<const FieldElement> coeffs, long bits);
Interval log_height_coefficients(std::span<const FieldElement> coeffs, long bits);

}  // namespace dml
