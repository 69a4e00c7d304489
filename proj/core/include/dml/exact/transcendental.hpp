#pragma once

#include "dml/exact/interval.hpp"

namespace dml {

/// Enclosure of ln(x) of width <= 2^-bits.  Exact [0, 0] for x = 1.
/// Throws DomainError for x <= 0 or bits < 1.
Interval enclose_log(const Rational& x, long bits);

/// ln over a positive interval (monotone, endpoint-wise).
Interval enclose_log(const Interval& x, long bits);

/// Enclosure of ln(2) of width <= 2^-bits.
Interval enclose_ln2(long bits);

/// Enclosure of pi of width <= 2^-bits (Machin's formula).
Interval enclose_pi(long bits);

/// Enclosure of e^x with relative width <= 2^-bits.
Interval enclose_exp(const Rational& x, long bits);
Interval enclose_exp(const Interval& x, long bits);

/// Enclosure of x^(1/k) for x >= 0, k >= 1; exact when x is a perfect k-th
/// power of a rational.  Relative width <= 2^-bits.
Interval enclose_root(const Rational& x, unsigned long k, long bits);
Interval enclose_root(const Interval& x, unsigned long k, long bits);

/// x^(p/q) for x > 0 as exp((p/q) ln x) unless the root is exact.
Interval enclose_rational_power(const Rational& x, const Rational& exponent, long bits);

/// Enclosure of ln(n!) with relative width <= 2^-bits of its midpoint
/// ([0, 0] for n <= 1).  n <= 10^4 uses the exact integer n!; larger n the
/// Stirling series with the first omitted term as remainder bound.
/// Throws DomainError for n < 0.
Interval log_factorial_bounds(long long n, long bits);

/// The Stirling path of log_factorial_bounds, callable for any n >= 1.
Interval log_factorial_stirling(long long n, long bits);

inline constexpr long long kExactFactorialLimit = 10000;

}  // namespace dml
