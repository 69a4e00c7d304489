#pragma once

#include <compare>
#include <optional>
#include <string>

#include "dml/exact/rational.hpp"

namespace dml {

/// Q (d = 1) or Q(sqrt d) for a squarefree d not in {0, 1}.
class Field {
 public:
  static Field rationals() { return Field(1); }
  /// Throws DomainError unless d is squarefree and d not in {0, 1}.
  static Field quadratic(long d);
  /// d = 1 gives Q, anything else a quadratic field.
  static Field from_discriminant_core(long d);

  long d() const { return d_; }
  int degree() const { return d_ == 1 ? 1 : 2; }
  bool is_rational() const { return d_ == 1; }
  bool is_real_quadratic() const { return d_ > 1; }
  bool is_imaginary_quadratic() const { return d_ < 0; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(long d) : d_(d) {}
  long d_;
};

/// Exact element a + b*sqrt(d) of a Field.  Elements of Q embed in every
/// field: binary operations between a rational element and one of Q(sqrt d)
/// are carried out in Q(sqrt d).  Mixing two different quadratic fields
/// throws DomainError.
class FieldElement {
 public:
  FieldElement() : field_(Field::rationals()) {}
  FieldElement(Rational a) : a_(std::move(a)), field_(Field::rationals()) {}  // NOLINT(google-explicit-constructor)
  FieldElement(long a) : a_(a), field_(Field::rationals()) {}                // NOLINT(google-explicit-constructor)
  FieldElement(int a) : a_(a), field_(Field::rationals()) {}                 // NOLINT(google-explicit-constructor)
  FieldElement(Rational a, Rational b, Field field);

  /// sqrt(d) in Q(sqrt d).
  static FieldElement sqrt_d(Field field) { return {Rational(0), Rational(1), field}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Field& field() const { return field_; }
  long d() const { return field_.d(); }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// The same element viewed in `target` (which must contain it).
  FieldElement in(Field target) const;

  /// a^2 - d b^2 (the element itself for Q).
  Rational norm() const;
  /// Trace over Q.
  Rational trace() const;
  FieldElement conjugate() const;
  FieldElement inverse() const;

  FieldElement operator-() const { return {-a_, -b_, field_}; }
  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
  FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
  FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
  FieldElement& operator/=(const FieldElement& y) { return *this = *this / y; }

  /// Equality is field-agnostic for rational values: 2 in Q equals 2 in Q(i).
  friend bool operator==(const FieldElement& x, const FieldElement& y);

  /// Lexicographic (a, b) order; only meaningful for canonical sorting.
  friend std::strong_ordering lex_compare(const FieldElement& x, const FieldElement& y);

  std::string to_string() const;

 private:
  Rational a_;
  Rational b_;
  Field field_;
};

using QuadraticElement = FieldElement;

FieldElement pow(const FieldElement& x, long e);

/// The field two operands live in jointly; throws on incompatible fields.
Field common_field(const Field& f, const Field& g);

/// Square root of x inside x's own field, if it exists there.
std::optional<FieldElement> sqrt_in_field(const FieldElement& x);

/// Sign of the real number sigma(x), where sigma sends sqrt(d) to
/// +sqrt(d) (embedding 0) or -sqrt(d) (embedding 1); d must be > 0 or x
/// rational.  Decided exactly.
int real_sign(const FieldElement& x, int embedding);

}  // namespace dml
