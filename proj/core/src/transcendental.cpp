#include "dml/exact/transcendental.hpp"

#include <algorithm>
#include <vector>

#include "dml/error.hpp"

namespace dml {

namespace {

long bit_length(long long v) {
  long n = 0;
  unsigned long long u = v < 0 ? static_cast<unsigned long long>(-v) : static_cast<unsigned long long>(v);
  while (u) {
    ++n;
    u >>= 1;
  }
  return n;
}

// atanh(t) for 0 <= t <= 1/3, absolute error <= 2^-prec.  Terms
// t^(2j+1)/(2j+1) are summed on the 2^-(prec+8) grid; the tail after the
// last term T is below T t^2 / (1 - t^2).
Interval atanh_series(const Rational& t, long prec) {
  if (t == 0) return Interval(0);
  const long grid = prec + 8;
  const Rational t2 = t * t;
  const Interval t2i = Interval(snap_down(t2, grid + 4), snap_up(t2, grid + 4));
  Interval power = Interval(snap_down(t, grid), snap_up(t, grid));
  Rational lo = 0, hi = 0;
  const Rational tail_factor = t2 / (1 - t2);
  const Rational target = Rational(1, 1) / pow(Rational(2), prec + 2);
  for (long j = 0;; ++j) {
    const Rational denom(2 * j + 1);
    lo = snap_down(lo + power.lo() / denom, grid);
    hi = snap_up(hi + power.hi() / denom, grid);
    Rational tail = power.hi() * tail_factor / Rational(2 * j + 3);
    if (tail < target) {
      hi = snap_up(hi + tail, grid);
      break;
    }
    power = (power * t2i).rounded_absolute(grid);
  }
  return {lo, hi};
}

// atan(1/q) for integer q >= 2, alternating series; partial sums bracket.
Interval atan_inverse(long q, long prec) {
  const long grid = prec + 8;
  const Rational x(1, q);
  const Rational x2 = x * x;
  Rational term = x;  // exact: 1/q^(2j+1)
  Rational lo = 0, hi = 0;
  const Rational target = Rational(1) / pow(Rational(2), prec + 2);
  for (long j = 0;; ++j) {
    Rational t = term / Rational(2 * j + 1);
    if (j % 2 == 0) {
      lo = snap_down(lo + t, grid);
      hi = snap_up(hi + t, grid);
    } else {
      lo = snap_down(lo - t, grid);
      hi = snap_up(hi - t, grid);
    }
    term *= x2;
    if (term / Rational(2 * j + 3) < target) {
      // next term has sign (-1)^(j+1) and is smaller than target
      if (j % 2 == 0) {
        lo = snap_down(lo - term / Rational(2 * j + 3), grid);
      } else {
        hi = snap_up(hi + term / Rational(2 * j + 3), grid);
      }
      break;
    }
  }
  return {lo, hi};
}

// ln(z) for z in [1/2, 2] via 2 atanh((z-1)/(z+1)).
Interval log_near_one(const Rational& z, long prec) {
  const Rational t = (z - 1) / (z + 1);
  if (t >= 0) return Interval(2) * atanh_series(t, prec + 1);
  return -(Interval(2) * atanh_series(-t, prec + 1));
}

}  // namespace

Interval enclose_ln2(long bits) {
  if (bits < 1) throw DomainError("enclose_ln2: bits must be positive");
  return (Interval(2) * atanh_series(Rational(1, 3), bits + 2)).rounded_absolute(bits + 2);
}

Interval enclose_log(const Rational& x, long bits) {
  if (x <= 0) throw DomainError("enclose_log of a non-positive number " + format_rational(x));
  if (bits < 1) throw DomainError("enclose_log: bits must be positive");
  if (x == 1) return Interval(0);

  // x = 2^k y with y in [2/3, 4/3]
  long k = approx_log2(x);
  Rational y = x;
  if (k > 0) {
    mpq_div_2exp(y.get_mpq_t(), y.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  } else if (k < 0) {
    mpq_mul_2exp(y.get_mpq_t(), y.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  }
  while (y > Rational(4, 3)) {
    y /= 2;
    ++k;
  }
  while (y < Rational(2, 3)) {
    y *= 2;
    --k;
  }

  for (long guard = 16;; guard *= 2) {
    const long prec = bits + guard;
    // ln is monotone: bracket y by short dyadics first.
    const Rational y_lo = snap_down(y, prec + 4);
    const Rational y_hi = snap_up(y, prec + 4);
    Interval ln_y(log_near_one(y_lo, prec + 2).lo(), log_near_one(y_hi, prec + 2).hi());
    Interval result = ln_y;
    if (k != 0) {
      result += Interval(k) * enclose_ln2(prec + bit_length(k) + 2);
    }
    result = result.rounded_absolute(bits + 2);
    if (result.width() <= Rational(1) / pow(Rational(2), bits)) return result;
  }
}

Interval enclose_log(const Interval& x, long bits) {
  if (!x.is_positive()) throw DomainError("enclose_log of an interval reaching zero or below");
  if (x.is_point()) return enclose_log(x.lo(), bits);
  return {enclose_log(x.lo(), bits).lo(), enclose_log(x.hi(), bits).hi()};
}

Interval enclose_pi(long bits) {
  if (bits < 1) throw DomainError("enclose_pi: bits must be positive");
  const long prec = bits + 8;
  Interval pi = Interval(16) * atan_inverse(5, prec) - Interval(4) * atan_inverse(239, prec);
  return pi.rounded_absolute(bits + 2);
}

namespace {

// e^x for a single rational x; relative width about 2^-prec.
Interval exp_point(const Rational& x, long prec) {
  if (x == 0) return Interval(1);
  // |x| / 2^s <= 1/2
  long s = std::max<long>(0, approx_log2(x) + 2);
  Rational r = x;
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(s));
  const long work = prec + s + 16;
  const long grid = work + 4;

  Interval ri(snap_down(r, grid), snap_up(r, grid));
  Interval sum(1);
  Interval term(1);
  const Rational target = Rational(1) / pow(Rational(2), work + 2);
  for (long k = 1;; ++k) {
    term = (term * ri / Interval(k)).rounded_absolute(grid);
    sum = (sum + term).rounded_absolute(grid);
    Rational mag = std::max(abs(term.lo()), abs(term.hi()));
    // |r| <= 1/2: the tail after term k is below 2 |term| |r| / (k + 1) <= |term|
    if (mag < target) {
      sum += Interval(-mag, mag);
      break;
    }
  }
  for (long i = 0; i < s; ++i) sum = (sum * sum).rounded(work);
  return sum;
}

}  // namespace

Interval enclose_exp(const Rational& x, long bits) {
  if (bits < 1) throw DomainError("enclose_exp: bits must be positive");
  if (x == 0) return Interval(1);
  for (long guard = 16;; guard *= 2) {
    Interval e = exp_point(x, bits + guard).rounded(bits + 2);
    if (e.width() <= e.lo() / pow(Rational(2), bits)) return e;
  }
}

Interval enclose_exp(const Interval& x, long bits) {
  if (x.is_point()) return enclose_exp(x.lo(), bits);
  return {enclose_exp(x.lo(), bits).lo(), enclose_exp(x.hi(), bits).hi()};
}

Interval enclose_root(const Rational& x, unsigned long k, long bits) {
  if (x < 0) throw DomainError("enclose_root of a negative number");
  if (k == 0) throw DomainError("enclose_root: zeroth root");
  if (x == 0 || k == 1) return Interval(x);
  {
    Integer rn, rd;
    const bool exact_num = mpz_root(rn.get_mpz_t(), x.get_num_mpz_t(), k) != 0;
    const bool exact_den = mpz_root(rd.get_mpz_t(), x.get_den_mpz_t(), k) != 0;
    if (exact_num && exact_den) return Interval(Rational(rn, rd));
  }
  // r = floor((x 2^(kP))^(1/k)) brackets x^(1/k) 2^P within [r, r + 1].
  const long p = bits + 4 - approx_log2(x) / static_cast<long>(k) + 1;
  Integer scaled = floor(x * pow(Rational(2), static_cast<long>(k) * p));
  Integer r;
  mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), k);
  const Rational unit = pow(Rational(2), -p);
  return {Rational(r) * unit, Rational(r + 1) * unit};
}

Interval enclose_root(const Interval& x, unsigned long k, long bits) {
  if (x.is_point()) return enclose_root(x.lo(), k, bits);
  return {enclose_root(x.lo(), k, bits).lo(), enclose_root(x.hi(), k, bits).hi()};
}

Interval enclose_rational_power(const Rational& x, const Rational& exponent, long bits) {
  if (x <= 0) throw DomainError("rational power of a non-positive base");
  const Integer& p = exponent.get_num();
  const Integer& q = exponent.get_den();
  if (mpz_fits_slong_p(p.get_mpz_t()) && mpz_fits_ulong_p(q.get_mpz_t()) && abs(p) <= 4096) {
    Rational base = pow(x, p.get_si());
    return enclose_root(base, q.get_ui(), bits);
  }
  const long lb = bits + 8 + std::max<long>(0, approx_log2(abs(exponent) + 1) + 8);
  return enclose_exp(Interval(exponent) * enclose_log(x, lb), bits);
}

namespace {

// B_0..B_n via sum_{j=0}^{m} C(m+1, j) B_j = 0.
std::vector<Rational> bernoulli_numbers(std::size_t n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    Rational acc = 0;
    Integer binom = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * static_cast<unsigned long>(m + 1 - j) / static_cast<unsigned long>(j + 1);
    }
    b[m] = -acc / Rational(static_cast<long>(m + 1));
  }
  return b;
}

}  // namespace

Interval log_factorial_stirling(long long n, long bits) {
  if (n < 1) throw DomainError("log_factorial_stirling needs n >= 1");
  const Rational nq(static_cast<long>(n));
  // ln n! >= n/2 for n >= 1 up to tiny n; aim for absolute error 2^-(bits+4) * n / 4.
  for (long guard = 8;; guard *= 2) {
    const long abs_bits = bits + guard - approx_log2(nq) + 4;
    const long lb = std::max<long>(abs_bits + bit_length(n) + 2, 8);
    Interval ln_n = enclose_log(nq, lb);
    Interval two_pi = Interval(2) * enclose_pi(lb + 2);
    Interval result = (Interval(nq + Rational(1, 2)) * ln_n) - Interval(nq) + enclose_log(two_pi, lb) / Interval(2);

    // The error after truncation is bounded by the first omitted term; stop
    // once that term is below target or the asymptotic series turns around.
    const Rational target = Rational(1) / pow(Rational(2), abs_bits + 2);
    std::vector<Rational> b;
    Rational previous = -1;
    for (long k = 1;; ++k) {
      if (b.size() < static_cast<std::size_t>(2 * k + 1)) b = bernoulli_numbers(static_cast<std::size_t>(4 * k + 8));
      Rational term = b[static_cast<std::size_t>(2 * k)] /
                      (Rational(2 * k * (2 * k - 1)) * pow(nq, 2 * k - 1));
      Rational magnitude = abs(term);
      if (magnitude < target || (previous >= 0 && magnitude >= previous) || k > 60) {
        result += Interval(-magnitude, magnitude);
        break;
      }
      result += Interval(term);
      previous = magnitude;
    }
    result = result.rounded(bits + 4);
    if (result.width() <= abs(result.midpoint()) / pow(Rational(2), bits) || guard >= 256) return result;
  }
}

Interval log_factorial_bounds(long long n, long bits) {
  if (n < 0) throw DomainError("log_factorial_bounds of a negative integer");
  if (bits < 1) throw DomainError("log_factorial_bounds: bits must be positive");
  if (n <= 1) return Interval(0);
  if (n <= kExactFactorialLimit) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    // ln n! >= ln 2 > 1/2, so absolute 2^-(bits+1) is relative 2^-bits.
    return enclose_log(Rational(f), bits + 1);
  }
  return log_factorial_stirling(n, bits);
}

}  // namespace dml
