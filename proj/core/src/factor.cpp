#include "dml/exact/factor.hpp"

#include <algorithm>

#include "dml/error.hpp"

namespace dml {

namespace {

constexpr unsigned long kTrialLimit = 1u << 16;

bool is_probable_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

Integer pollard_brent(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  Integer y = seed % n, c = (seed * 7 + 3) % n, g = 1, q = 1, x, ys;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y);
    unsigned long k = 0;
    do {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = step(y);
        q = (q * abs(x - y)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = step(ys);
      Integer diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Integer d;
  for (unsigned long seed = 2;; ++seed) {
    d = pollard_brent(n, seed);
    if (d != n && d != 1) break;
  }
  split(d, out);
  split(Integer(n / d), out);
}

}  // namespace

std::map<Integer, int> factorize(const Integer& n) {
  if (n == 0) throw DomainError("factorize(0)");
  std::map<Integer, int> out;
  Integer m = abs(n);
  for (unsigned long p = 2; p < kTrialLimit && m > 1; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      out[Integer(p)] += e;
    }
  }
  split(m, out);
  return out;
}

std::vector<Integer> prime_support(const Rational& q) {
  if (q == 0) throw DomainError("prime support of zero");
  std::vector<Integer> primes;
  for (const auto& [p, e] : factorize(q.get_num())) primes.push_back(p);
  for (const auto& [p, e] : factorize(q.get_den())) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

SquarefreeDecomposition squarefree_decompose(const Rational& q) {
  if (q == 0) throw DomainError("squarefree decomposition of zero");
  // q = n/d = n*d / d^2
  Integer nd = q.get_num() * q.get_den();
  Integer core = sgn(nd) < 0 ? Integer(-1) : Integer(1);
  Integer s = 1;
  for (const auto& [p, e] : factorize(nd)) {
    if (e % 2 == 1) core *= p;
    s *= pow(p, static_cast<unsigned long>(e / 2));
  }
  Rational root(s, q.get_den());
  root.canonicalize();
  return {core, root};
}

bool is_squarefree(long d) {
  if (d == 0) return false;
  unsigned long long m = d < 0 ? static_cast<unsigned long long>(-d) : static_cast<unsigned long long>(d);
  for (unsigned long long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

int legendre(const Integer& a, const Integer& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

namespace {

Integer tonelli_shanks(const Integer& a, const Integer& p) {
  Integer n = a % p;
  if (n < 0) n += p;
  if (n == 0) return 0;
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (legendre(z, p) != -1) ++z;
  Integer m_c, c, t, r;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  Integer e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    Integer b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
    r = (r * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

Integer sqrt_mod_prime_power(const Integer& d, const Integer& p, unsigned long k, int selector) {
  if (k == 0) return 0;
  if (p == 2) {
    const unsigned long work = std::max<unsigned long>(k + 2, 3);
    Integer modulus = pow(Integer(2), work);
    if (mod(d, 8) != 1) throw DomainError("no 2-adic square root");
    // s^2 = d mod 2^j, j >= 3; fix the next bit by adding 2^(j-1).
    Integer s = 1;
    for (unsigned long j = 3; j < work; ++j) {
      Integer pj1 = pow(Integer(2), j + 1);
      if (mod(s * s - d, pj1) != 0) s += pow(Integer(2), j - 1);
    }
    s = mod(s, modulus);
    const bool one_mod_four = mod(s, 4) == 1;
    if (one_mod_four != (selector == 0)) s = mod(-s, modulus);
    return mod(s, pow(Integer(2), k));
  }
  Integer r = tonelli_shanks(d, p);
  if (mod(r * r - d, p) != 0) throw DomainError("no p-adic square root");
  Integer other = p - r;
  Integer s = (selector == 0) == (r <= other) ? r : other;
  Integer pk = p;
  unsigned long have = 1;
  while (have < k) {
    have = std::min(2 * have, k);
    pk = pow(p, have);
    Integer inv;
    Integer twice = mod(2 * s, pk);
    mpz_invert(inv.get_mpz_t(), twice.get_mpz_t(), pk.get_mpz_t());
    s = mod(s - (s * s - d) * inv, pk);
  }
  return mod(s, pow(p, k));
}

}  // namespace dml
