#include "dml/heights/heights.hpp"

#include <algorithm>
#include <set>

#include "dml/error.hpp"
#include "dml/exact/transcendental.hpp"

namespace dml {

namespace {

Field field_of(std::span<const FieldElement> coords) {
  Field f = Field::rationals();
  for (const FieldElement& c : coords) f = common_field(f, c.field());
  return f;
}

bool all_zero(std::span<const FieldElement> coords) {
  return std::all_of(coords.begin(), coords.end(), [](const FieldElement& c) { return c.is_zero(); });
}

std::string join(std::span<const FieldElement> coords) {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ", ";
    out += coords[i].to_string();
  }
  return out + ")";
}

}  // namespace

ProjectivePoint::ProjectivePoint(std::vector<FieldElement> coords)
    : coords_(std::move(coords)), field_(field_of(coords_)) {
  if (coords_.size() < 2) throw DomainError("a projective point needs at least 2 coordinates");
  if (all_zero(coords_)) throw DomainError("the zero vector is not a projective point");
  for (FieldElement& c : coords_) c = c.in(field_);
}

ProjectivePoint ProjectivePoint::normalized() const {
  auto lead = std::find_if(coords_.begin(), coords_.end(), [](const FieldElement& c) { return !c.is_zero(); });
  const FieldElement inv = lead->inverse();
  std::vector<FieldElement> out;
  out.reserve(coords_.size());
  for (const FieldElement& c : coords_) out.push_back(c * inv);
  return ProjectivePoint(std::move(out));
}

std::string ProjectivePoint::to_string() const { return join(coords_); }

bool operator==(const ProjectivePoint& x, const ProjectivePoint& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (!(x[i] * y[j] == x[j] * y[i])) return false;
    }
  }
  return true;
}

BinaryLinearForm::BinaryLinearForm(FieldElement c1, FieldElement c2)
    : c1_(std::move(c1)), c2_(std::move(c2)), field_(common_field(c1_.field(), c2_.field())) {
  if (c1_.is_zero() && c2_.is_zero()) throw DomainError("the zero linear form is not allowed");
  c1_ = c1_.in(field_);
  c2_ = c2_.in(field_);
}

std::string BinaryLinearForm::to_string() const {
  return "(" + c1_.to_string() + ")*x1 + (" + c2_.to_string() + ")*x2";
}

BinaryLinearForm form_of(FormId id) {
  switch (id) {
    case FormId::L1:
      return {1, 0};
    case FormId::L2:
      return {0, 1};
    case FormId::L3:
      return {1, 1};
  }
  throw DomainError("unknown form");
}

FieldElement evaluate(FormId id, const FieldElement& x1, const FieldElement& x2) {
  switch (id) {
    case FormId::L1:
      return x1;
    case FormId::L2:
      return x2;
    case FormId::L3:
      return x1 + x2;
  }
  throw DomainError("unknown form");
}

std::string to_string(FormId id) {
  switch (id) {
    case FormId::L1:
      return "L1";
    case FormId::L2:
      return "L2";
    case FormId::L3:
      return "L3";
  }
  return "?";
}

FormId parse_form_id(std::string_view name) {
  if (name == "L1") return FormId::L1;
  if (name == "L2") return FormId::L2;
  if (name == "L3") return FormId::L3;
  throw DomainError("unknown form '" + std::string(name) + "' (expected L1, L2 or L3)");
}

Interval ExactHeight::enclose(long bits) const {
  // enclose_root works in relative precision; H ~ 2^(log2(R)/k)
  const long magnitude = std::max<long>(0, approx_log2(radicand) / static_cast<long>(root) + 2);
  return enclose_root(radicand, root, bits + magnitude);
}

Interval ExactHeight::log(long bits) const {
  // ln(R^(1/k)) = ln(R)/k; width shrinks by k so bits are preserved.
  Interval l = enclose_log(radicand, bits);
  return Interval(l.lo() / root, l.hi() / root);
}

std::optional<Rational> ExactHeight::exact() const {
  Interval e = enclose_root(radicand, root, 8);
  if (e.is_point()) return e.lo();
  return std::nullopt;
}

Rational finite_height_part(std::span<const FieldElement> coords) {
  if (all_zero(coords)) throw DomainError("height of the zero vector");
  const Field field = field_of(coords);
  if (std::all_of(coords.begin(), coords.end(), [](const FieldElement& c) { return c.is_rational(); })) {
    // prod_p max_i |a_i|_p = lcm(denominators) / gcd(numerators), once per degree
    Integer num(0), den(1);
    for (const FieldElement& c : coords) {
      if (c.is_zero()) continue;
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.a().get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.a().get_den_mpz_t());
    }
    return pow(ratio(den, num), field.degree());
  }
  std::set<Integer> primes;
  for (const FieldElement& c : coords) {
    if (c.is_zero()) continue;
    for (const Integer& p : relevant_primes(c)) primes.insert(p);
  }
  // max_i |a_i|_v^[K:Q] = N(P)^(-min_i ord_P(a_i))
  Rational g(1);
  for (const Integer& p : primes) {
    for (const Place& v : places_above(field, p)) {
      long least = 0;
      bool first = true;
      for (const FieldElement& c : coords) {
        if (c.is_zero()) continue;
        const long o = order_at(c.in(field), v);
        least = first ? o : std::min(least, o);
        first = false;
      }
      g *= pow(Rational(v.residue_norm()), -least);
    }
  }
  return g;
}

ExactHeight exact_height(std::span<const FieldElement> coords) {
  const Field field = field_of(coords);
  const Rational g = finite_height_part(coords);
  if (field.is_rational()) {
    Rational s(0);
    for (const FieldElement& c : coords) s += c.a() * c.a();
    return {g * g * s, 2};
  }
  if (field.is_imaginary_quadratic()) {
    // one complex place with exponent [K_v:R]/[K:Q] = 1: H = G^(1/2) * sqrt(sum |a_i|^2)
    Rational s(0);
    for (const FieldElement& c : coords) s += c.in(field).norm();
    return {g * s, 2};
  }
  // two real places, exponent 1/2 each: H^4 = G^2 * N(sum a_i^2)
  FieldElement s(0);
  for (const FieldElement& c : coords) s = s + c.in(field) * c.in(field);
  return {g * g * s.in(field).norm(), 4};
}

Interval height_point(const ProjectivePoint& x, long bits) { return exact_height(x.coords()).enclose(bits); }

Interval log_height_point(const ProjectivePoint& x, long bits) { return exact_height(x.coords()).log(bits); }

Interval height_linear_form(const BinaryLinearForm& form, long bits) {
  const FieldElement c[] = {form.c1(), form.c2()};
  return exact_height(c).enclose(bits);
}

Interval height_linear_form(std::span<const FieldElement> coeffs, long bits) {
  return exact_height(coeffs).enclose(bits);
}

Interval log_height_linear_form(const BinaryLinearForm& form, long bits) {
  const FieldElement c[] = {form.c1(), form.c2()};
  return exact_height(c).log(bits);
}

Interval height_coefficients(std::span<const FieldElement> coeffs, long bits) {
  return exact_height(coeffs).enclose(bits);
}

Interval log_height_coefficients(std::span<const FieldElement> coeffs, long bits) {
  return exact_height(coeffs).log(bits);
}

}  // namespace dml
