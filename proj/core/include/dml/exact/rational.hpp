#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dml {

using Integer = mpz_class;
/// mpq_class keeps numerator/denominator canonical (den > 0, gcd = 1) after
/// every arithmetic operation.
using Rational = mpq_class;

/// Canonical n/d (d != 0).  Prefer this over Rational(n, d), which gmpxx
/// does not canonicalize.
inline Rational ratio(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Parses "p/q" or "p" (optional leading sign, decimal digits only).
/// Throws DomainError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when q = 1.
std::string format_rational(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// q^e for any integer e; throws DomainError for 0^negative.
Rational pow(const Rational& q, long e);
Integer pow(const Integer& z, unsigned long e);

/// floor(log2 |q|) up to an error of one; q must be nonzero.  Cheap, used to
/// pick working precisions.
long approx_log2(const Rational& q);

/// floor(q * 2^shift) / 2^shift and the corresponding ceiling.
Rational snap_down(const Rational& q, long shift);
Rational snap_up(const Rational& q, long shift);

/// Exponent of prime p in the nonzero integer n.
long valuation(const Integer& n, const Integer& p);
/// Exponent of prime p in the nonzero rational q (negative for denominators).
long valuation(const Rational& q, const Integer& p);

}  // namespace dml
