#include "dml/heights/places.hpp"

#include <algorithm>
#include <charconv>

#include "dml/error.hpp"
#include "dml/exact/factor.hpp"
#include "dml/exact/transcendental.hpp"

namespace dml {

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::None:
      return "none";
    case Splitting::Split:
      return "split";
    case Splitting::Inert:
      return "inert";
    case Splitting::Ramified:
      return "ramified";
  }
  return "?";
}

Splitting splitting_type(const Field& field, const Integer& p) {
  if (field.is_rational()) return Splitting::None;
  const long d = field.d();
  if (p == 2) {
    const long r = ((d % 8) + 8) % 8;
    if (r == 1) return Splitting::Split;
    if (r == 5) return Splitting::Inert;
    return Splitting::Ramified;
  }
  const Integer dd(d);
  if (mpz_divisible_p(dd.get_mpz_t(), p.get_mpz_t())) return Splitting::Ramified;
  return legendre(dd, p) == 1 ? Splitting::Split : Splitting::Inert;
}

Place Place::real(Field field, int embedding) {
  if (field.is_imaginary_quadratic()) throw DomainError(field.name() + " has no real places");
  const int count = field.is_rational() ? 1 : 2;
  if (embedding < 0 || embedding >= count) throw DomainError("no real embedding with index " + std::to_string(embedding));
  Place v(field, PlaceKind::Real);
  v.embedding_ = embedding;
  return v;
}

Place Place::complex(Field field) {
  if (!field.is_imaginary_quadratic()) throw DomainError(field.name() + " has no complex places");
  return Place(field, PlaceKind::Complex);
}

Place Place::finite(Field field, const Integer& p, int selector) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) throw DomainError(p.get_str() + " is not a prime");
  Place v(field, PlaceKind::Finite);
  v.prime_ = p;
  v.splitting_ = splitting_type(field, p);
  const int count = v.splitting_ == Splitting::Split ? 2 : 1;
  if (selector < 0 || selector >= count) {
    throw DomainError("no prime of " + field.name() + " above " + p.get_str() + " with selector " +
                      std::to_string(selector));
  }
  v.selector_ = selector;
  return v;
}

Place Place::from_name(Field field, std::string_view name) {
  auto fail = [&] { return DomainError("unknown place '" + std::string(name) + "' for " + field.name()); };
  if (name == "inf") {
    if (field.is_imaginary_quadratic()) return complex(field);
    if (field.is_rational()) return real(field, 0);
    throw fail();
  }
  if (name == "inf0" || name == "inf1") {
    if (!field.is_real_quadratic()) throw fail();
    return real(field, name.back() - '0');
  }
  const auto dot = name.find('.');
  std::string_view digits = name.substr(0, dot);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw fail();
  }
  int selector = 0;
  if (dot != std::string_view::npos) {
    std::string_view sel = name.substr(dot + 1);
    if (sel != "0" && sel != "1") throw fail();
    selector = sel[0] - '0';
  }
  Place v = finite(field, Integer(std::string(digits)), selector);
  if (dot != std::string_view::npos && v.splitting() != Splitting::Split) throw fail();
  if (dot == std::string_view::npos && v.splitting() == Splitting::Split) throw fail();
  return v;
}

Integer Place::residue_norm() const {
  if (is_infinite()) throw DomainError("residue norm of an infinite place");
  return residue_degree() == 2 ? Integer(prime_ * prime_) : prime_;
}

int Place::local_degree() const {
  switch (kind_) {
    case PlaceKind::Real:
      return 1;
    case PlaceKind::Complex:
      return 2;
    case PlaceKind::Finite:
      return field_.is_rational() ? 1 : ramification_index() * residue_degree();
  }
  return 0;
}

std::string Place::name() const {
  switch (kind_) {
    case PlaceKind::Real:
      return field_.is_rational() ? "inf" : "inf" + std::to_string(embedding_);
    case PlaceKind::Complex:
      return "inf";
    case PlaceKind::Finite:
      return splitting_ == Splitting::Split ? prime_.get_str() + "." + std::to_string(selector_) : prime_.get_str();
  }
  return "?";
}

std::vector<Place> infinite_places(const Field& field) {
  if (field.is_rational()) return {Place::real(field, 0)};
  if (field.is_real_quadratic()) return {Place::real(field, 0), Place::real(field, 1)};
  return {Place::complex(field)};
}

std::vector<Place> places_above(const Field& field, const Integer& p) {
  Place first = Place::finite(field, p, 0);
  if (first.splitting() == Splitting::Split) return {first, Place::finite(field, p, 1)};
  return {first};
}

namespace {

// x = (A + B sqrt d) / C with integers, C > 0.
struct IntegralForm {
  Integer A, B, C;
};

IntegralForm integral_form(const FieldElement& x) {
  Integer c;
  mpz_lcm(c.get_mpz_t(), x.a().get_den_mpz_t(), x.b().get_den_mpz_t());
  return {Integer(x.a() * c), Integer(x.b() * c), c};
}

void check_field(const FieldElement& x, const Place& v) {
  if (!(x.field() == v.field()) && !x.is_rational()) {
    throw DomainError("element of " + x.field().name() + " evaluated at a place of " + v.field().name());
  }
}

long order_split(const IntegralForm& f, long d, const Place& v) {
  const Integer& p = v.prime();
  Integer A = f.A, B = f.B;
  long shift = 0;
  while (mpz_divisible_p(A.get_mpz_t(), p.get_mpz_t()) && mpz_divisible_p(B.get_mpz_t(), p.get_mpz_t())) {
    A /= p;
    B /= p;
    ++shift;
  }
  const Integer norm = A * A - Integer(d) * B * B;
  const long k = valuation(norm, p);
  if (k == 0) return shift;
  // Both conjugate valuations are >= 0 and sum to k, so precision k + 1 suffices.
  const Integer s = sqrt_mod_prime_power(Integer(d), p, static_cast<unsigned long>(k + 1), v.selector());
  const Integer modulus = pow(p, static_cast<unsigned long>(k + 1));
  Integer r;
  Integer lin = A + B * s;
  mpz_fdiv_r(r.get_mpz_t(), lin.get_mpz_t(), modulus.get_mpz_t());
  if (r == 0) throw DomainError("internal: split valuation exceeded its bound");
  return shift + valuation(r, p);
}

}  // namespace

long order_at(const FieldElement& x, const Place& v) {
  check_field(x, v);
  if (v.is_infinite()) throw DomainError("order_at needs a finite place");
  if (x.is_zero()) throw DomainError("order of zero is infinite");
  const Integer& p = v.prime();
  if (x.is_rational() || v.field().is_rational()) {
    // ord_P(a) = e * v_p(a) for rational a
    return valuation(x.a(), p) * v.ramification_index();
  }
  const IntegralForm f = integral_form(x);
  const long denominator = valuation(f.C, p) * v.ramification_index();
  const Integer norm = f.A * f.A - Integer(x.d()) * f.B * f.B;
  switch (v.splitting()) {
    case Splitting::Inert:
      return valuation(norm, p) / 2 - denominator;
    case Splitting::Ramified:
      return valuation(norm, p) - denominator;
    case Splitting::Split:
      return order_split(f, x.d(), v) - denominator;
    case Splitting::None:
      break;
  }
  throw DomainError("internal: unexpected splitting");
}

std::vector<Integer> relevant_primes(const FieldElement& x) {
  if (x.is_zero()) throw DomainError("relevant primes of zero");
  if (x.is_rational()) return prime_support(x.a());
  const IntegralForm f = integral_form(x);
  const Integer norm = f.A * f.A - Integer(x.d()) * f.B * f.B;
  return prime_support(Rational(norm * f.C));
}

Interval embedded_abs(const FieldElement& x, int embedding, long bits) {
  if (x.is_rational()) return Interval(abs(x.a()));
  const int sign = real_sign(x, embedding);
  const Rational s = embedding == 0 ? x.b() : Rational(-x.b());
  for (long prec = bits + 8;; prec *= 2) {
    Interval root_d = enclose_root(Rational(x.d()), 2, prec + std::max<long>(0, approx_log2(abs(s) + 1)));
    Interval v = Interval(x.a()) + Interval(s) * root_d;
    if (sign < 0) v = -v;
    if (v.lo() > 0 && v.width() <= v.lo() / pow(Rational(2), bits)) return v;
  }
}

Interval absolute_value(const FieldElement& x, const Place& v, long bits) {
  check_field(x, v);
  if (x.is_zero()) return Interval(0);
  const unsigned long n = static_cast<unsigned long>(v.field().degree());
  switch (v.kind()) {
    case PlaceKind::Finite: {
      const Rational np(v.residue_norm());
      return enclose_root(pow(np, -order_at(x, v)), n, bits);
    }
    case PlaceKind::Complex:
      // |sigma(x)|^(2/2) = sqrt(N(x))
      return enclose_root(x.in(v.field()).norm(), 2, bits);
    case PlaceKind::Real:
      if (n == 1) return Interval(abs(x.a()));
      return enclose_root(embedded_abs(x, v.embedding(), bits + 4), 2, bits + 2);
  }
  throw DomainError("internal: unexpected place kind");
}

ProductFormulaReport check_product_formula(const FieldElement& x, long bits) {
  if (x.is_zero()) throw DomainError("product formula needs x != 0");
  const Field field = x.field();
  ProductFormulaReport report;
  report.places = infinite_places(field);
  for (const Integer& p : relevant_primes(x)) {
    for (const Place& v : places_above(field, p)) report.places.push_back(v);
  }
  // Each factor carries relative error 2^-(bits+8); the product stays well
  // inside 2^-bits for any realistic number of places.
  Interval product(1);
  report.exact = true;
  for (const Place& v : report.places) {
    Interval f = absolute_value(x, v, bits + 8);
    report.exact = report.exact && f.is_point();
    product = product * f;
    if (!product.is_point()) product = product.rounded(bits + 16);
    report.factors.push_back(std::move(f));
  }
  report.product = product;
  report.holds = product.contains(Rational(1));
  return report;
}

}  // namespace dml
