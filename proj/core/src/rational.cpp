#include "dml/exact/rational.hpp"

#include <cctype>

#include "dml/error.hpp"

namespace dml {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);

  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer pow(const Integer& z, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), z.get_mpz_t(), e);
  return r;
}

Rational pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0) {
    if (e < 0) throw DomainError("zero raised to a negative power");
    return Rational(0);
  }
  const unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational r(pow(q.get_num(), k), pow(q.get_den(), k));
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

long approx_log2(const Rational& q) {
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
}

namespace {

// floor/ceil of q * 2^shift as an integer.
Integer scaled(const Rational& q, long shift, bool up) {
  Integer num = q.get_num();
  Integer den = q.get_den();
  if (shift >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  Integer r;
  if (up) {
    mpz_cdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return r;
}

Rational unscale(const Integer& z, long shift) {
  Rational r(z);
  if (shift >= 0) {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  return r;
}

}  // namespace

Rational snap_down(const Rational& q, long shift) { return unscale(scaled(q, shift, false), shift); }
Rational snap_up(const Rational& q, long shift) { return unscale(scaled(q, shift, true), shift); }

long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero");
  Integer m = abs(n);
  return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& q, const Integer& p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

}  // namespace dml
