#include "dml/roth/roth.hpp"

#include <numeric>

#include "dml/error.hpp"

namespace dml {

namespace {

void check_theta(int m, const Rational& theta) {
  if (m < 2) throw DomainError("m must be at least 2");
  const Rational bound(Integer(m) * m * (m + 1));
  if (theta <= 0 || theta > bound) {
    throw DomainError("theta = " + format_rational(theta) + " outside (0, " + format_rational(bound) + "]");
  }
}

void check_degrees(int m, std::span<const int> r) {
  if (r.size() != static_cast<std::size_t>(m)) throw DomainError("multidegree must have m entries");
  for (int d : r) {
    if (d < 1) throw DomainError("multidegree entries must be positive");
  }
}

}  // namespace

std::vector<RatioVerdict> check_hypothesis_ratios(int m, std::span<const int> r, const Rational& theta) {
  check_theta(m, theta);
  check_degrees(m, r);
  const Rational threshold = Rational(Integer(m) * m * (m + 1)) / theta;
  std::vector<RatioVerdict> out;
  for (int h = 0; h + 1 < m; ++h) {
    const Rational q = ratio(r[h], r[h + 1]);
    out.push_back({h + 1, q, threshold, q >= threshold});
  }
  return out;
}

Rational roth_leading_coefficient(int m, const Rational& theta) {
  check_theta(m, theta);
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
  const Integer num = 7 * Integer(m) * fact * fact * pow(Integer(m), static_cast<unsigned long>(m));
  return Rational(num) / (2 * pow(theta, m));
}

Interval height_condition_threshold(int m, const Rational& theta, std::span<const int> r, const Interval& log_hp) {
  check_degrees(m, r);
  if (log_hp.lo() < 0) throw DomainError("log H(P) must be nonnegative");
  const Rational c = roth_leading_coefficient(m, theta);
  const long total = std::accumulate(r.begin(), r.end(), 0L);
  return Interval(c) * (Interval(Rational(total)) + log_hp);
}

void RothInstance::validate() const {
  check_theta(m, theta);
  check_degrees(m, r);
  if (p.degrees() != r) throw DomainError("polynomial multidegree does not match r");
  if (p.is_zero()) throw DomainError("P must be nonzero");
  if (forms.size() != static_cast<std::size_t>(m)) throw DomainError("one linear form per block is required");
  for (const BinaryLinearForm& l : forms) {
    if (!l.c1().is_rational() || !l.c2().is_rational()) throw DomainError("linear forms must have rational coefficients");
  }
}

RothReport check_roth_instance(const RothInstance& inst, long bits, long max_bits) {
  inst.validate();
  RothReport report;
  report.ratio_verdicts = check_hypothesis_ratios(inst.m, inst.r, inst.theta);
  report.ratios_hold = true;
  for (const RatioVerdict& v : report.ratio_verdicts) report.ratios_hold = report.ratios_hold && v.ok;
  report.leading_coefficient = roth_leading_coefficient(inst.m, inst.theta);

  const ExactHeight hp = exact_height(inst.p.coefficients());
  std::vector<ExactHeight> hl;
  for (const BinaryLinearForm& l : inst.forms) {
    const FieldElement c[] = {l.c1(), l.c2()};
    hl.push_back(exact_height(c));
  }

  for (long b = bits;; b *= 2) {
    report.bits_used = b;
    report.log_height_p = hp.log(b);
    // H(P) >= 1, so a slightly negative lower end is rounding only
    if (report.log_height_p.lo() < 0) report.log_height_p = Interval(Rational(0), report.log_height_p.hi());
    const Interval rhs = height_condition_threshold(inst.m, inst.theta, inst.r, report.log_height_p);
    report.height_verdicts.clear();
    bool all_certain = true;
    for (int h = 0; h < inst.m; ++h) {
      HeightVerdict v;
      v.h = h + 1;
      v.lhs = Interval(Rational(inst.r[h])) * hl[h].log(b);
      v.rhs = rhs;
      v.ordering = certified_compare(v.lhs, v.rhs);
      if (v.ordering == Ordering::Overlap && v.lhs.is_point() && v.rhs.is_point()) {
        v.ok = v.certain = true;  // equal exact values satisfy >=
      } else {
        v.certain = v.ordering != Ordering::Overlap;
        v.ok = v.ordering == Ordering::Greater;
      }
      all_certain = all_certain && v.certain;
      report.height_verdicts.push_back(std::move(v));
    }
    if (all_certain || b * 2 > max_bits) {
      report.indeterminate = !all_certain;
      break;
    }
  }
  report.heights_hold = !report.indeterminate;
  for (const HeightVerdict& v : report.height_verdicts) report.heights_hold = report.heights_hold && v.ok;

  for (const BinaryLinearForm& l : inst.forms) report.points.push_back(vanishing_point(l));
  report.conclusion_index = index(inst.p, report.points);
  report.conclusion_holds = report.conclusion_index < inst.theta;
  return report;
}

}  // namespace dml
