#include "dml/bounds/bounds.hpp"

#include <algorithm>

#include "dml/error.hpp"
#include "dml/exact/transcendental.hpp"

namespace dml {

namespace {

void check_delta(const Rational& delta) {
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0, 1), got " + format_rational(delta));
}

Interval scale(const Rational& c, const Interval& x) { return Interval(c) * x; }

long magnitude_bits(long m) { return static_cast<long>(Integer(m).get_str(2).size()); }

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less:
      return "<";
    case Relation::LessEqual:
      return "<=";
    case Relation::Greater:
      return ">";
    case Relation::Equal:
      return "=";
    case Relation::Info:
      return "vs";
  }
  return "?";
}

GapConstants gap_constants(long m, long bits) {
  if (m < 1) throw DomainError("m must be positive");
  GapConstants c;
  c.m = m;
  c.e = ratio(Integer(m) * m * (m + 1), 240);
  if (m <= kExactGapLimit) {
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    c.f_exact = ratio(7, 2) * Rational(m) * Rational(fact * fact) * pow(ratio(Integer(m), 480), static_cast<long>(m));
    c.log_f = enclose_log(*c.f_exact, bits);
    return c;
  }
  // ln F = ln(7/2) + ln m + 2 ln m! + m (ln m - ln 480); m multiplies the
  // error of the last term, so it gets extra bits
  const long guard = bits + 8 + magnitude_bits(m);
  const Interval ln_m = enclose_log(Rational(m), guard);
  c.log_f = enclose_log(ratio(7, 2), guard) + ln_m + scale(Rational(2), log_factorial_bounds(m, guard)) +
            scale(Rational(m), ln_m - enclose_log(Rational(480), guard));
  c.log_f = c.log_f.rounded(bits + 4);
  return c;
}

CheckLine make_check(std::string name, Interval lhs, Relation relation, Interval rhs, std::string note) {
  CheckLine c;
  c.name = std::move(name);
  c.relation = relation;
  c.ordering = certified_compare(lhs, rhs);
  const bool equal = lhs.is_point() && rhs.is_point() && lhs.lo() == rhs.lo();
  switch (relation) {
    case Relation::Less:
      c.certain = c.ordering != Ordering::Overlap || equal;
      c.holds = c.ordering == Ordering::Less;
      break;
    case Relation::LessEqual:
      c.certain = c.ordering != Ordering::Overlap || equal;
      c.holds = c.ordering == Ordering::Less || equal;
      break;
    case Relation::Greater:
      c.certain = c.ordering != Ordering::Overlap || equal;
      c.holds = c.ordering == Ordering::Greater;
      break;
    case Relation::Equal:
      c.certain = c.ordering != Ordering::Overlap || equal;
      c.holds = equal;
      break;
    case Relation::Info:
      c.certain = true;
      c.holds = true;
      break;
  }
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.note = std::move(note);
  return c;
}

CheckLine check_q_growth_condition(const Interval& log_q, const Rational& delta, long m, long bits,
                                   long max_bits) {
  check_delta(delta);
  if (m < 1) throw DomainError("m must be positive");
  const std::string name = "delta^2 ln Q > 600 m F ln 2";
  const Interval lhs = scale(delta * delta, log_q);
  for (long b = bits;; b *= 2) {
    const GapConstants c = gap_constants(m, b);
    CheckLine line;
    if (c.f_exact) {
      const Interval rhs = scale(600 * Rational(m) * *c.f_exact, enclose_ln2(b));
      line = make_check(name, lhs, Relation::Greater, rhs);
    } else if (log_q.lo() > 0) {
      // compared after taking logarithms of both (positive) sides
      const Interval left = enclose_log(lhs, b);
      const Interval right = enclose_log(Rational(600 * Rational(m)), b) + enclose_log(enclose_ln2(b + 8), b) + c.log_f;
      line = make_check("ln(delta^2 ln Q) > ln(600 m ln 2) + ln F", left, Relation::Greater, right,
                        "compared in log form");
    } else {
      // F >= 1 once m > 20, so 1 is a lower bound for the right side
      line = make_check(name, lhs, Relation::Greater, Interval(Rational(1)), "right side replaced by its lower bound 1");
    }
    if (line.certain || b * 2 > max_bits) return line;
  }
}

std::size_t count_gap_intervals(std::span<const Rational> values, const Rational& e) {
  if (e <= 1) throw DomainError("E must exceed 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 1) throw DomainError("gap values must exceed 1, got " + format_rational(values[i]));
    if (i && values[i] < values[i - 1]) throw DomainError("gap values must be sorted ascending");
  }
  const long s = e.get_num().get_si();
  const long t = e.get_den().get_si();
  // v <= q^(s/t)  <=>  v^t <= q^s
  auto covered = [&](const Rational& q, const Rational& v) {
    const long size = (approx_log2(q) + 1) * s;
    if (size <= (1L << 22)) return pow(v, t) <= pow(q, s);
    for (long b = 64; b <= 1 << 16; b *= 2) {
      const Ordering o = certified_compare(enclose_log(v, b), scale(e, enclose_log(q, b)));
      if (o != Ordering::Overlap) return o == Ordering::Less;
    }
    throw DomainError("gap comparison stayed unresolved");
  };
  std::size_t count = 0;
  std::optional<Rational> anchor;
  for (const Rational& v : values) {
    if (anchor && covered(*anchor, v)) continue;
    anchor = v;
    ++count;
  }
  return count;
}

Interval subspace_count_formula(const GapConstants& c, const Rational& delta, long bits) {
  check_delta(delta);
  const long guard = bits + 16 + magnitude_bits(c.m);
  const Rational four_over = 4 / delta;
  const Interval first = scale(Rational(c.m), Interval(1) + scale(four_over, enclose_log(c.e, guard)));
  const Interval log300 = enclose_log(300 / delta, guard) + c.log_f;
  const Interval second = Interval(1) + scale(four_over, log300);
  return (first + second).rounded(bits + 4);
}

Interval subspace_count_formula(long m, const Rational& delta, long bits) {
  return subspace_count_formula(gap_constants(m, bits + 8), delta, bits);
}

long least_admissible_m(const Rational& delta) {
  check_delta(delta);
  const Integer m = floor(Rational(28800) / (delta * delta)) + 1;
  if (!m.fits_slong_p()) throw DomainError("m does not fit in a machine integer");
  return m.get_si();
}

Interval enclose_two_pow_22_7(long bits) {
  return Interval(Rational(Integer(1) << 22)) * enclose_root(Rational(128), 10, bits + 24);
}

bool BoundReport::all_hold() const {
  return !indeterminate && std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.holds; });
}

BoundReport verify_line_bound_derivation(const Rational& delta, long bits, long max_bits) {
  check_delta(delta);
  const long m = least_admissible_m(delta);
  const Rational inv = 1 / delta;
  for (long b = bits;; b *= 2) {
    BoundReport r;
    r.title = "line-count derivation for delta = " + format_rational(delta);
    r.delta = delta;
    r.m = m;
    r.epsilon = delta / 60;
    r.gamma = delta / 10;
    r.bits_used = b;
    const Interval mm{Rational(m)};
    r.checks.push_back(make_check("m > 28800 delta^-2", mm, Relation::Greater, Interval(28800 * inv * inv)));
    r.checks.push_back(make_check("m <= 28801 delta^-2", mm, Relation::LessEqual, Interval(28801 * inv * inv)));

    const GapConstants c = gap_constants(m, b + 8);
    const long guard = b + 16 + magnitude_bits(m);
    const Interval ln_inv = enclose_log(inv, guard);
    r.checks.push_back(make_check("E/2 = m^2 (m+1) / 480", Interval(c.e / 2), Relation::Equal,
                                  Interval(ratio(Integer(m) * m * (m + 1), 480))));
    r.checks.push_back(make_check("ln E < 26 + 6 ln(1/delta)", enclose_log(c.e, b), Relation::Less,
                                  (Interval(26) + scale(Rational(6), ln_inv)).rounded(b)));
    r.checks.push_back(make_check("ln(300 F / delta) < 767865 delta^-2 ln(1/delta)",
                                  (enclose_log(300 * inv, guard) + c.log_f).rounded(b), Relation::Less,
                                  scale(767865 * inv * inv, ln_inv).rounded(b)));
    const Interval bound = (enclose_two_pow_22_7(guard) * Interval(pow(inv, 3)) * ln_inv).rounded(b);
    r.checks.push_back(make_check("m (1 + (4/delta) ln E) + (1 + (4/delta) ln(300 F/delta)) <= 2^(227/10) delta^-3 ln(1/delta)",
                                  subspace_count_formula(c, delta, b), Relation::LessEqual, bound));
    const Interval theta(Rational(480));
    r.checks.push_back(make_check("480 < 8*60/delta", theta, Relation::Less, Interval(480 * inv),
                                  "the factor 8.60 is read as 8*60"));
    r.checks.push_back(make_check("8*60/delta = 8/epsilon", Interval(480 * inv), Relation::Equal, Interval(8 / r.epsilon)));
    r.checks.push_back(make_check("8/epsilon < m epsilon", Interval(8 / r.epsilon), Relation::Less,
                                  Interval(Rational(m) * r.epsilon)));
    const bool certain =
        std::all_of(r.checks.begin(), r.checks.end(), [](const CheckLine& l) { return l.certain; });
    if (certain || b * 2 > max_bits) {
      r.indeterminate = !certain;
      return r;
    }
  }
}

BoundReport verify_final_count_arithmetic(long bits, long max_bits) {
  for (long b = bits;; b *= 2) {
    BoundReport r;
    r.title = "final count arithmetic";
    r.delta = ratio(1, 9);
    r.m = least_admissible_m(r.delta);
    r.epsilon = r.delta / 60;
    r.gamma = r.delta / 10;
    r.bits_used = b;
    const long guard = b + 80;
    const Integer a = Integer(128) * 4800 * 36;
    const Integer six12 = pow(Integer(6), 12);
    r.checks.push_back(make_check("2^7 * 4800 * 36 = 22118400", Interval(Rational(a)), Relation::Equal,
                                  Interval(Rational(22118400))));
    r.checks.push_back(make_check("6^12 = 2176782336", Interval(Rational(six12)), Relation::Equal,
                                  Interval(Rational(Integer("2176782336")))));
    const Interval two_pow = enclose_two_pow_22_7(guard);
    const Interval ln3 = enclose_log(Rational(3), guard);
    const Interval lhs = (scale(Rational(2), scale(Rational(a), enclose_log(Rational(4), guard)) + Interval(1) +
                                               two_pow * scale(Rational(six12), ln3)))
                             .rounded(b);
    r.checks.push_back(make_check("2 (2^7 * 4800 * 36 ln 4 + 1 + 2^(227/10) 6^12 ln 3) < 2^57", lhs, Relation::Less,
                                  Interval(Rational(pow(Integer(2), 57)))));
    const Interval per_pair = (two_pow * scale(Rational(729), ln3)).rounded(b);
    const Interval derived = (two_pow * scale(Rational(729), enclose_log(Rational(9), guard))).rounded(b);
    r.checks.push_back(make_check("per-pair count 2^(227/10) 3^6 ln 3 vs line bound at delta = 1/9", per_pair,
                                  Relation::Info, derived,
                                  "the line bound uses ln 9 = 2 ln 3, so it is exactly twice the per-pair count"));
    r.checks.push_back(make_check("Q > 4^9 equals Q > 4^(1/delta) at delta = 1/9", Interval(Rational(pow(Integer(4), 9))),
                                  Relation::Equal, Interval(Rational(pow(Integer(4), 9))),
                                  "the general precondition is stated as Q > 4^delta"));
    const bool certain =
        std::all_of(r.checks.begin(), r.checks.end(), [](const CheckLine& l) { return l.certain; });
    if (certain || b * 2 > max_bits) {
      r.indeterminate = !certain;
      return r;
    }
  }
}

}  // namespace dml
