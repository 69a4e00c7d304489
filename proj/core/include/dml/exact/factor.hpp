#pragma once

#include <map>
#include <vector>

#include "dml/exact/rational.hpp"

namespace dml {

/// Prime factorization of |n| (n != 0).  Trial division for small factors,
/// Pollard-Brent rho with a Miller-Rabin cofactor test for the rest.
std::map<Integer, int> factorize(const Integer& n);

/// Distinct primes dividing the numerator or denominator of q (q != 0).
std::vector<Integer> prime_support(const Rational& q);

/// Writes q = s^2 * core with core a squarefree integer (sign carried by
/// core) and s a positive rational.  q must be nonzero.
struct SquarefreeDecomposition {
  Integer core;
  Rational root;
};
SquarefreeDecomposition squarefree_decompose(const Rational& q);

bool is_squarefree(long d);

/// Square root of a residue modulo p^k (p prime, d a nonzero square unit
/// mod p, and for p = 2 additionally d = 1 mod 8).  Returns the root that is
/// = `hint` mod p for odd p, or = 1 mod 4 when p = 2 and hint = 0 (3 mod 4
/// otherwise).
Integer sqrt_mod_prime_power(const Integer& d, const Integer& p, unsigned long k, int selector);

/// Legendre symbol (a / p) for odd prime p.
int legendre(const Integer& a, const Integer& p);

}  // namespace dml
