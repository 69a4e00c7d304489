#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dml/exact/interval.hpp"
#include "dml/exact/quadratic.hpp"

namespace dml {

enum class PlaceKind { Real, Complex, Finite };

/// How a rational prime decomposes in K.  `None` is used for K = Q.
enum class Splitting { None, Split, Inert, Ramified };

std::string to_string(Splitting s);

/// A place of K = Q or Q(sqrt d): a real embedding, a pair of complex
/// embeddings, or a prime ideal above a rational prime p.
///
/// Real embedding 0 sends sqrt(d) to the positive root, embedding 1 to the
/// negative one.  For a split prime p, selector 0 is the ideal on which
/// sqrt(d) reduces to the smaller residue root mod p (to 1 mod 4 when p = 2).
class Place {
 public:
  static Place real(Field field, int embedding = 0);
  static Place complex(Field field);
  /// Throws DomainError unless p is prime and the selector exists.
  static Place finite(Field field, const Integer& p, int selector = 0);
  /// Inverse of name(): "inf", "inf0", "inf1", "5", "5.1", ...
  static Place from_name(Field field, std::string_view name);

  const Field& field() const { return field_; }
  PlaceKind kind() const { return kind_; }
  bool is_infinite() const { return kind_ != PlaceKind::Finite; }
  int embedding() const { return embedding_; }
  const Integer& prime() const { return prime_; }
  Splitting splitting() const { return splitting_; }
  int selector() const { return selector_; }
  int ramification_index() const { return splitting_ == Splitting::Ramified ? 2 : 1; }
  int residue_degree() const { return splitting_ == Splitting::Inert ? 2 : 1; }
  /// N(P) = #(O_K / P); meaningless for infinite places.
  Integer residue_norm() const;
  /// [K_v : R] for infinite places, [K_v : Q_p] for finite ones.
  int local_degree() const;
  std::string name() const;

  friend bool operator==(const Place& x, const Place& y) {
    return x.field_ == y.field_ && x.kind_ == y.kind_ && x.embedding_ == y.embedding_ && x.prime_ == y.prime_ &&
           x.selector_ == y.selector_;
  }

 private:
  Place(Field field, PlaceKind kind) : field_(field), kind_(kind) {}

  Field field_;
  PlaceKind kind_;
  int embedding_ = 0;
  Integer prime_ = 0;
  Splitting splitting_ = Splitting::None;
  int selector_ = 0;
};

Splitting splitting_type(const Field& field, const Integer& p);
std::vector<Place> infinite_places(const Field& field);
std::vector<Place> places_above(const Field& field, const Integer& p);

/// ord_P(x) for a finite place P and x != 0.
long order_at(const FieldElement& x, const Place& v);

/// Rational primes p with ord_P(x) != 0 for some P | p are among these.
std::vector<Integer> relevant_primes(const FieldElement& x);

/// |sigma(x)| for a real embedding (d > 0 or x rational), relative width
/// <= 2^-bits; exact when sigma(x) is rational.
Interval embedded_abs(const FieldElement& x, int embedding, long bits);

/// The normalized absolute value |x|_v:
///   real v:     |sigma(x)|^(1/[K:Q])
///   complex v:  |sigma(x)|^(2/[K:Q])
///   finite v:   N(P)^(-ord_P(x)/[K:Q])
/// Exact whenever the value is rational; |0|_v = 0.
Interval absolute_value(const FieldElement& x, const Place& v, long bits);

struct ProductFormulaReport {
  std::vector<Place> places;
  std::vector<Interval> factors;
  Interval product;
  bool exact = false;
  bool holds = false;
};

/// Multiplies |x|_v over the infinite places and every finite place where
/// |x|_v can differ from 1.  `holds` iff the product encloses 1.
ProductFormulaReport check_product_formula(const FieldElement& x, long bits);

}  // namespace dml
