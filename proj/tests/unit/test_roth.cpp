#include <random>

#include "doctest.h"
#include "dml/error.hpp"
#include "dml/roth/roth.hpp"
#include "oracle_values.hpp"
#include "roth_family.hpp"

using namespace dml;

TEST_CASE("ratio hypothesis") {
  const std::vector<int> r44 = {4, 4}, r45 = {4, 5}, r3 = {1296, 36, 1};
  auto a = check_hypothesis_ratios(2, r44, 12);
  REQUIRE(a.size() == 1);
  CHECK(a[0].ok);
  CHECK(a[0].threshold == 1);
  CHECK_FALSE(check_hypothesis_ratios(2, r45, 12)[0].ok);
  auto c = check_hypothesis_ratios(3, r3, 1);
  REQUIRE(c.size() == 2);
  CHECK(c[0].ok);
  CHECK(c[1].ok);
  CHECK(c[0].threshold == 36);
  CHECK_THROWS_AS(check_hypothesis_ratios(2, r44, 0), DomainError);
  CHECK_THROWS_AS(check_hypothesis_ratios(2, r44, 13), DomainError);
}

TEST_CASE("height threshold") {
  CHECK(roth_leading_coefficient(2, 12) == ratio(7, 9));
  CHECK(roth_leading_coefficient(3, 1) == 10206);
  const std::vector<int> r = {1, 1};
  CHECK(height_condition_threshold(2, 12, r, Interval(0)) == Interval(ratio(14, 9)));
  const Rational c = roth_leading_coefficient(2, ratio(19, 10));
  CHECK(c > 31);
  CHECK(c < 32);
}

TEST_CASE("conclusion examples") {
  RothInstance det;
  det.m = 2;
  det.r = {1, 1};
  det.theta = ratio(3, 2);
  det.p = MultihomogPolynomial({1, 1}, {{{1, 0}, 1}, {{0, 1}, -1}});
  det.forms = {BinaryLinearForm(0, 1), BinaryLinearForm(0, 1)};
  auto rep = check_roth_instance(det, 64);
  CHECK(rep.conclusion_index == 1);
  CHECK(rep.conclusion_holds);
  CHECK(rep.points[0] == ProjectivePoint{1, 0});

  RothInstance nonvanishing = det;
  nonvanishing.forms = {BinaryLinearForm(0, 1), BinaryLinearForm(1, 0)};
  auto rep0 = check_roth_instance(nonvanishing, 64);
  CHECK(rep0.conclusion_index == 0);
  CHECK(rep0.conclusion_holds);

  RothInstance sq;
  sq.m = 2;
  sq.r = {2, 1};
  sq.theta = 1;
  sq.p = MultihomogPolynomial({2, 1}, {{{0, 1}, 1}});
  sq.forms = {BinaryLinearForm(0, 1), BinaryLinearForm(1, 0)};
  auto rep2 = check_roth_instance(sq, 64);
  CHECK(rep2.conclusion_index == 2);
  CHECK_FALSE(rep2.conclusion_holds);
  CHECK_FALSE(rep2.hypotheses_hold());
  CHECK_FALSE(rep2.indeterminate);

  RothInstance bad = det;
  bad.forms = {BinaryLinearForm(0, 1), BinaryLinearForm(0, FieldElement(0, 1, Field::quadratic(2)))};
  CHECK_THROWS_AS(check_roth_instance(bad, 64), DomainError);
}

TEST_CASE("feasible family satisfies the lemma") {
  CHECK(oracle::ceil_exp(52) == Integer(oracle::kCeilExp52));
  std::mt19937_64 rng(5);
  RothReport first;
  for (int i = 0; i < 20; ++i) {
    const RothInstance inst = oracle::feasible_instance(rng);
    const RothReport rep = check_roth_instance(inst, 128);
    REQUIRE(rep.ratios_hold);
    REQUIRE(rep.heights_hold);
    REQUIRE_FALSE(rep.indeterminate);
    for (const auto& v : rep.height_verdicts) CHECK(v.ordering == Ordering::Greater);
    REQUIRE(rep.conclusion_holds);
    if (i == 0) first = rep;
  }
  std::mt19937_64 again(5);
  const RothReport repeat = check_roth_instance(oracle::feasible_instance(again), 128);
  CHECK(repeat.conclusion_index == first.conclusion_index);
  CHECK(repeat.log_height_p == first.log_height_p);
}

TEST_CASE("near ties escalate and then report indeterminate") {
  std::mt19937_64 rng(1);
  RothInstance inst = oracle::feasible_instance(rng);
  // choose N2 just above exp(threshold): log H(L2) exceeds it by about e^-359
  const Interval logp = exact_height(inst.p.coefficients()).log(2048);
  const Interval rhs = height_condition_threshold(2, inst.theta, inst.r, logp);
  const Integer n2 = ceil(enclose_exp(rhs.hi(), 2048).hi());
  inst.forms[1] = BinaryLinearForm(1, FieldElement(Rational(-n2)));

  const RothReport capped = check_roth_instance(inst, 64, 256);
  CHECK(capped.indeterminate);
  CHECK_FALSE(capped.heights_hold);
  CHECK(capped.height_verdicts[1].ordering == Ordering::Overlap);
  CHECK(capped.bits_used == 256);

  const RothReport escalated = check_roth_instance(inst, 64);
  CHECK_FALSE(escalated.indeterminate);
  CHECK(escalated.bits_used > 256);
  CHECK(escalated.heights_hold);
}
