#include "dml/exact/quadratic.hpp"

#include "dml/error.hpp"
#include "dml/exact/factor.hpp"

namespace dml {

Field Field::quadratic(long d) {
  if (d == 0 || d == 1 || !is_squarefree(d)) {
    throw DomainError("Q(sqrt " + std::to_string(d) + ") is not a quadratic field with squarefree d");
  }
  return Field(d);
}

Field Field::from_discriminant_core(long d) { return d == 1 ? rationals() : quadratic(d); }

std::string Field::name() const { return d_ == 1 ? "Q" : "Q(sqrt(" + std::to_string(d_) + "))"; }

Field common_field(const Field& f, const Field& g) {
  if (f == g || g.is_rational()) return f;
  if (f.is_rational()) return g;
  throw DomainError("elements of " + f.name() + " and " + g.name() + " cannot be combined");
}

FieldElement::FieldElement(Rational a, Rational b, Field field) : a_(std::move(a)), b_(std::move(b)), field_(field) {
  if (field_.is_rational() && b_ != 0) throw DomainError("irrational part in an element of Q");
}

FieldElement FieldElement::in(Field target) const {
  Field f = common_field(target, field_);
  if (!(f == target)) {
    throw DomainError(to_string() + " does not lie in " + target.name());
  }
  if (target.is_rational() && b_ != 0) throw DomainError(to_string() + " does not lie in Q");
  return {a_, b_, target};
}

Rational FieldElement::norm() const {
  if (field_.is_rational()) return a_;
  return a_ * a_ - Rational(field_.d()) * b_ * b_;
}

Rational FieldElement::trace() const { return field_.is_rational() ? a_ : Rational(2 * a_); }

FieldElement FieldElement::conjugate() const { return {a_, -b_, field_}; }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  if (field_.is_rational()) return FieldElement(Rational(1 / a_));
  Rational n = norm();
  return {a_ / n, -b_ / n, field_};
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  return {x.a_ + y.a_, x.b_ + y.b_, common_field(x.field_, y.field_)};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  return {x.a_ - y.a_, x.b_ - y.b_, common_field(x.field_, y.field_)};
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  Field f = common_field(x.field_, y.field_);
  if (x.b_ == 0) return {x.a_ * y.a_, x.a_ * y.b_, f};
  if (y.b_ == 0) return {x.a_ * y.a_, x.b_ * y.a_, f};
  Rational a = x.a_ * y.a_ + Rational(f.d()) * x.b_ * y.b_;
  Rational b = x.a_ * y.b_ + x.b_ * y.a_;
  return {std::move(a), std::move(b), f};
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) { return x * y.inverse(); }

bool operator==(const FieldElement& x, const FieldElement& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.b_ == 0 || x.field_ == y.field_;
}

std::strong_ordering lex_compare(const FieldElement& x, const FieldElement& y) {
  if (int c = cmp(x.a_, y.a_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  if (int c = cmp(x.b_, y.b_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string FieldElement::to_string() const {
  if (b_ == 0) return format_rational(a_);
  std::string s = a_ == 0 ? "" : format_rational(a_) + (b_ > 0 ? "+" : "");
  return s + format_rational(b_) + "*sqrt(" + std::to_string(field_.d()) + ")";
}

FieldElement pow(const FieldElement& x, long e) {
  if (e < 0) return pow(x.inverse(), -e);
  FieldElement result(Rational(1), Rational(0), x.field());
  FieldElement base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return std::nullopt;
  }
  return Rational(sqrt(q.get_num()), sqrt(q.get_den()));
}

}  // namespace

std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
  const Field f = x.field();
  if (x.is_zero()) return FieldElement(Rational(0), Rational(0), f);
  if (f.is_rational()) {
    if (auto r = rational_sqrt(x.a())) return FieldElement(*r);
    return std::nullopt;
  }
  const Rational d(f.d());
  if (x.b() == 0) {
    if (auto r = rational_sqrt(x.a())) return FieldElement(*r, Rational(0), f);
    if (auto r = rational_sqrt(x.a() / d)) return FieldElement(Rational(0), *r, f);
    return std::nullopt;
  }
  // (u + v sqrt d)^2 = x  =>  u^2 = (a +- sqrt(N(x))) / 2, v = b / (2u).
  auto n = rational_sqrt(x.norm());
  if (!n) return std::nullopt;
  for (const Rational& cand : {Rational((x.a() + *n) / 2), Rational((x.a() - *n) / 2)}) {
    auto u = rational_sqrt(cand);
    if (!u || *u == 0) continue;
    FieldElement y(*u, x.b() / (2 * *u), f);
    if (y * y == x) return y;
  }
  return std::nullopt;
}

int real_sign(const FieldElement& x, int embedding) {
  const int sa = sgn(x.a());
  if (x.b() == 0) return sa;
  if (x.d() < 0) throw DomainError("real sign requested for an element of an imaginary quadratic field");
  const int sb = embedding == 0 ? sgn(x.b()) : -sgn(x.b());
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a^2 vs d b^2; equality impossible for squarefree d != 1.
  return cmp(x.a() * x.a(), Rational(x.d()) * x.b() * x.b()) > 0 ? sa : sb;
}

}  // namespace dml
