#include "dml/recurrence/recurrence.hpp"

#include <algorithm>
#include <map>

#include "dml/error.hpp"
#include "dml/exact/factor.hpp"
#include "dml/exact/transcendental.hpp"
#include "dml/heights/places.hpp"

namespace dml {

Integer multiplicity_bound() { return pow(Integer(2), 57); }

std::optional<int> root_of_unity_order(const FieldElement& x) {
  if (x.is_zero()) throw DomainError("0 is not a root of unity candidate");
  for (int n : {1, 2, 3, 4, 6}) {
    if (pow(x, n) == FieldElement(1)) return n;
  }
  return std::nullopt;
}

namespace {

BoundLine make_bound(std::string statement, std::size_t observed) {
  BoundLine b{std::move(statement), multiplicity_bound(), observed, false};
  b.within = Integer(static_cast<unsigned long>(observed)) <= b.bound;
  return b;
}

Field field_of(std::initializer_list<const FieldElement*> xs) {
  Field f = Field::rationals();
  for (const FieldElement* x : xs) f = common_field(f, x->field());
  return f;
}

// |sigma(x)| at an infinite place, relative width <= 2^-bits
Interval abs_at(const FieldElement& x, const Place& v, long bits) {
  if (x.is_zero()) return Interval(0);
  if (v.kind() == PlaceKind::Complex) return enclose_root(x.norm(), 2, bits);
  return embedded_abs(x, v.embedding(), bits);
}

// sign of |sigma(x)| - |sigma(y)|, exactly
int compare_abs(const FieldElement& x, const FieldElement& y, const Place& v) {
  if (v.kind() == PlaceKind::Complex) {
    const Rational d = x.norm() - y.norm();
    return sgn(d);
  }
  const FieldElement diff = x * x - y * y;
  return real_sign(diff, v.embedding());
}

// The term `dom` of {terms} dominates the sum of the others for every step
// k >= 0, where term i at step k is terms[i] * steps[i]^k.
bool dominates(int dom, const FieldElement (&terms)[3], const FieldElement (&steps)[3], const Place& v) {
  if (terms[dom].is_zero()) return false;
  for (int k = 0; k < 3; ++k) {
    if (k == dom || terms[k].is_zero()) continue;
    if (compare_abs(steps[dom], steps[k], v) < 0) return false;
  }
  for (long bits = 64; bits <= 4096; bits *= 2) {
    Interval others(0);
    for (int k = 0; k < 3; ++k) {
      if (k != dom) others = others + abs_at(terms[k], v, bits);
    }
    const Interval mine = abs_at(terms[dom], v, bits);
    if (mine.lo() > others.hi()) return true;
    if (mine.hi() <= others.lo()) return false;
  }
  return false;
}

std::optional<DominanceWitness> find_dominance(const UnitEquationProblem& p, const Field& field, long m0, bool forward) {
  static const char* kNames[3] = {"1", "a*alpha^m", "b*beta^m"};
  const FieldElement terms[3] = {FieldElement(1).in(field), (p.a * pow(p.alpha, m0)).in(field),
                                 (p.b * pow(p.beta, m0)).in(field)};
  const FieldElement steps[3] = {FieldElement(1).in(field), (forward ? p.alpha : p.alpha.inverse()).in(field),
                                 (forward ? p.beta : p.beta.inverse()).in(field)};
  for (const Place& v : infinite_places(field)) {
    for (int dom = 0; dom < 3; ++dom) {
      if (dominates(dom, terms, steps, v)) {
        return DominanceWitness{forward ? "m >= " + std::to_string(m0) : "m <= " + std::to_string(m0), kNames[dom],
                                v.name()};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

void UnitEquationProblem::validate() const {
  if (alpha.is_zero() || beta.is_zero()) throw DomainError("alpha and beta must be nonzero");
  field_of({&a, &b, &alpha, &beta});
  if (root_of_unity_order(alpha) && root_of_unity_order(beta)) {
    throw HypothesisViolation("hypothesis violated: alpha and beta are both roots of unity; at least one must not be");
  }
}

UnitEquationReport solve_unit_equation(const UnitEquationProblem& p, long range) {
  p.validate();
  if (range < 1) throw DomainError("the scan range M must be positive");
  const Field field = field_of({&p.a, &p.b, &p.alpha, &p.beta});
  UnitEquationReport report;
  report.range_lo = -range;
  report.range_hi = range;
  auto value = [&](const FieldElement& pa, const FieldElement& pb) { return p.a * pa + p.b * pb + FieldElement(1); };
  std::vector<long> found;
  // m = 0, 1, ..., M and m = -1, ..., -M by repeated multiplication
  FieldElement pa(1), pb(1);
  for (long m = 0; m <= range; ++m) {
    if (value(pa, pb).is_zero()) found.push_back(m);
    pa = pa * p.alpha;
    pb = pb * p.beta;
  }
  const FieldElement ia = p.alpha.inverse(), ib = p.beta.inverse();
  pa = ia;
  pb = ib;
  for (long m = -1; m >= -range; --m) {
    if (value(pa, pb).is_zero()) found.push_back(m);
    pa = pa * ia;
    pb = pb * ib;
  }
  std::sort(found.begin(), found.end());
  report.solutions = std::move(found);

  auto up = find_dominance(p, field, range + 1, true);
  auto down = find_dominance(p, field, -range - 1, false);
  if (up && down) report.certificate = std::make_pair(*up, *down);
  report.bound = make_bound("unit equation a*alpha^m + b*beta^m + 1 = 0 has at most 2^57 integer solutions",
                            report.solutions.size());
  return report;
}

CharacteristicRoots characteristic_roots(const BinaryRecurrence& r) {
  const Field base = field_of({&r.nu1, &r.nu0});
  const FieldElement disc = (r.nu1 * r.nu1 + FieldElement(4) * r.nu0).in(base);
  FieldElement root;
  Field field = base;
  if (disc.is_zero()) {
    root = FieldElement(0);
  } else if (base.is_rational()) {
    const SquarefreeDecomposition sq = squarefree_decompose(disc.a());
    field = Field::from_discriminant_core(sq.core.get_si());
    root = sq.core == 1 ? FieldElement(sq.root) : FieldElement(Rational(0), sq.root, field);
  } else {
    auto s = sqrt_in_field(disc);
    if (!s) {
      throw UnsupportedError("characteristic roots have degree 4 over Q; only fields of degree <= 2 are supported");
    }
    root = *s;
  }
  const FieldElement half(ratio(1, 2));
  return {((r.nu1 + root) * half).in(field), ((r.nu1 - root) * half).in(field), field};
}

void check_binary_hypothesis(const BinaryRecurrence& r) {
  if (r.nu0.is_zero()) throw DomainError("nu0 must be nonzero");
  const CharacteristicRoots roots = characteristic_roots(r);
  if (root_of_unity_order(roots.alpha1) && root_of_unity_order(roots.alpha2)) {
    throw HypothesisViolation("hypothesis violated: both characteristic roots " + roots.alpha1.to_string() + " and " +
                              roots.alpha2.to_string() + " are roots of unity");
  }
  if (!(roots.alpha1 == roots.alpha2) && root_of_unity_order(roots.alpha1 * roots.alpha2.inverse())) {
    throw HypothesisViolation("hypothesis violated: the ratio of the distinct roots " + roots.alpha1.to_string() +
                              " and " + roots.alpha2.to_string() + " is a root of unity");
  }
}

namespace {

void check_range(long lo, long hi) {
  if (lo > hi) throw DomainError("empty range " + std::to_string(lo) + ":" + std::to_string(hi));
}

// Terms indexed from `first`; seeds are the terms at 0..k-1.  forward(w)
// gives the next term from the last k, backward(w) the previous one.
template <std::size_t K, class Fwd, class Bwd>
std::vector<FieldElement> linear_terms(const std::array<FieldElement, K>& seeds, long lo, long hi, Fwd forward,
                                       Bwd backward) {
  check_range(lo, hi);
  const long first = std::min(lo, 0L);
  const long last = std::max(hi, static_cast<long>(K) - 1);
  std::vector<FieldElement> all(static_cast<std::size_t>(last - first + 1));
  auto at = [&](long m) -> FieldElement& { return all[static_cast<std::size_t>(m - first)]; };
  for (std::size_t i = 0; i < K; ++i) at(static_cast<long>(i)) = seeds[i];
  for (long m = static_cast<long>(K); m <= last; ++m) {
    std::array<FieldElement, K> w;
    for (std::size_t i = 0; i < K; ++i) w[i] = at(m - static_cast<long>(K) + static_cast<long>(i));
    at(m) = forward(w);
  }
  for (long m = -1; m >= first; --m) {
    std::array<FieldElement, K> w;
    for (std::size_t i = 0; i < K; ++i) w[i] = at(m + 1 + static_cast<long>(i));
    at(m) = backward(w);
  }
  return {all.begin() + (lo - first), all.begin() + (hi - first + 1)};
}

}  // namespace

std::vector<FieldElement> binary_terms(const BinaryRecurrence& r, long lo, long hi) {
  if (r.nu0.is_zero()) throw DomainError("nu0 must be nonzero");
  const FieldElement inv0 = r.nu0.inverse();
  return linear_terms<2>(
      {r.u0, r.u1}, lo, hi, [&](const auto& w) { return r.nu1 * w[1] + r.nu0 * w[0]; },
      [&](const auto& w) { return (w[1] - r.nu1 * w[0]) * inv0; });
}

CountReport multiplicity_count(const BinaryRecurrence& r, const FieldElement& c, long lo, long hi) {
  check_binary_hypothesis(r);
  const std::vector<FieldElement> u = binary_terms(r, lo, hi);
  CountReport report;
  report.range_lo = lo;
  report.range_hi = hi;
  for (long m = lo; m <= hi; ++m) {
    if (u[static_cast<std::size_t>(m - lo)] == c) report.solutions.push_back(m);
  }
  report.bound = make_bound("binary recurrence multiplicity U(c) <= 2^57", report.solutions.size());
  report.notes.push_back("counts U(c) for c = " + c.to_string() + " inside the scan range; U = sup U(c) is not computed");
  return report;
}

namespace {

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out = {Integer(1)};
  for (const auto& [p, e] : factorize(abs(n))) {
    const std::size_t size = out.size();
    Integer pk(1);
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

// roots of z^3 - mu2 z^2 - mu1 z - mu0 for rational mu with a rational root
std::vector<FieldElement> ternary_roots(const Rational& mu2, const Rational& mu1, const Rational& mu0) {
  // integer coefficients c3 z^3 + c2 z^2 + c1 z + c0
  Integer l(1);
  for (const Rational* q : {&mu2, &mu1, &mu0}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den_mpz_t());
  const Integer c3 = l, c0 = Integer(-mu0 * l);
  auto eval = [&](const Rational& z) -> Rational { return z * z * z - mu2 * z * z - mu1 * z - mu0; };
  std::optional<Rational> rational_root;
  for (const Integer& p : divisors(c0)) {
    for (const Integer& q : divisors(c3)) {
      for (int s : {1, -1}) {
        const Rational z = ratio(s * p, q);
        if (eval(z) == 0) rational_root = z;
      }
      if (rational_root) break;
    }
    if (rational_root) break;
  }
  if (!rational_root) {
    throw UnsupportedError("the characteristic cubic has no rational root; roots of degree 3 are not supported");
  }
  const Rational r = *rational_root;
  // z^3 - mu2 z^2 - mu1 z - mu0 = (z - r)(z^2 + b1 z + b2)
  const Rational b1 = r - mu2;
  const Rational b2 = r * b1 - mu1;
  const Rational disc = b1 * b1 - 4 * b2;
  FieldElement root(0);
  Field field = Field::rationals();
  if (disc != 0) {
    const SquarefreeDecomposition sq = squarefree_decompose(disc);
    field = Field::from_discriminant_core(sq.core.get_si());
    root = sq.core == 1 ? FieldElement(sq.root) : FieldElement(Rational(0), sq.root, field);
  }
  const FieldElement half(ratio(1, 2));
  return {FieldElement(r).in(field), ((FieldElement(-b1) + root) * half).in(field),
          ((FieldElement(-b1) - root) * half).in(field)};
}

}  // namespace

void check_ternary_hypothesis(const TernaryRecurrence& t) {
  if (t.mu0.is_zero()) throw DomainError("mu0 must be nonzero");
  if (t.v0.is_zero() && t.v1.is_zero() && t.v2.is_zero()) {
    throw HypothesisViolation("hypothesis violated: |v0| + |v1| + |v2| != 0 is required");
  }
  field_of({&t.mu2, &t.mu1, &t.mu0, &t.v0, &t.v1, &t.v2});
  if (!t.mu2.is_rational() || !t.mu1.is_rational() || !t.mu0.is_rational()) {
    throw UnsupportedError("ternary root check needs rational mu0, mu1, mu2");
  }
  const auto roots = ternary_roots(t.mu2.a(), t.mu1.a(), t.mu0.a());
  const bool distinct = !(roots[0] == roots[1]) && !(roots[0] == roots[2]) && !(roots[1] == roots[2]);
  if (!distinct) return;
  // alpha1/alpha3 and alpha2/alpha3 both roots of unity makes every ratio
  // one, so the condition does not depend on the labeling
  const FieldElement inv = roots[2].inverse();
  if (root_of_unity_order(roots[0] * inv) && root_of_unity_order(roots[1] * inv)) {
    throw HypothesisViolation("hypothesis violated: all ratios of the characteristic roots " + roots[0].to_string() +
                              ", " + roots[1].to_string() + ", " + roots[2].to_string() + " are roots of unity");
  }
}

std::vector<FieldElement> ternary_terms(const TernaryRecurrence& t, long lo, long hi) {
  if (t.mu0.is_zero()) throw DomainError("mu0 must be nonzero");
  const FieldElement inv0 = t.mu0.inverse();
  return linear_terms<3>(
      {t.v0, t.v1, t.v2}, lo, hi, [&](const auto& w) { return t.mu2 * w[2] + t.mu1 * w[1] + t.mu0 * w[0]; },
      [&](const auto& w) { return (w[2] - t.mu2 * w[1] - t.mu1 * w[0]) * inv0; });
}

CountReport ternary_zero_count(const TernaryRecurrence& t, long lo, long hi) {
  check_ternary_hypothesis(t);
  const std::vector<FieldElement> v = ternary_terms(t, lo, hi);
  CountReport report;
  report.range_lo = lo;
  report.range_hi = hi;
  for (long m = lo; m <= hi; ++m) {
    if (v[static_cast<std::size_t>(m - lo)].is_zero()) report.solutions.push_back(m);
  }
  report.bound = make_bound("ternary recurrence zero-multiplicity U(0) <= 2^57", report.solutions.size());
  report.notes.push_back(
      "recurrence taken as v(m+3) = mu2 v(m+2) + mu1 v(m+1) + mu0 v(m), the form matching the characteristic "
      "polynomial z^3 - mu2 z^2 - mu1 z - mu0; the variant with a constant mu0 term is not used");
  return report;
}

}  // namespace dml
