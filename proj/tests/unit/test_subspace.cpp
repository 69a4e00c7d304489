#include <cmath>
#include <random>

#include "doctest.h"
#include "dml/error.hpp"
#include "dml/subspace/subspace.hpp"
#include "oracle_values.hpp"
#include "subspace_oracle.hpp"

using namespace dml;

namespace {

const Field kQ = Field::rationals();

std::vector<FieldElement> vec(FieldElement a, FieldElement b) { return {std::move(a), std::move(b)}; }

}  // namespace

TEST_CASE("exponent system examples") {
  const Place inf = Place::real(kQ);
  const Place two = Place::finite(kQ, Integer(2));
  CHECK(check_exponent_system(ExponentSystem(kQ, {{inf, FormId::L1, FormId::L2, ratio(1, 2), ratio(-1, 2)}})).holds);
  CHECK_FALSE(check_exponent_system(ExponentSystem(kQ, {{inf, FormId::L1, FormId::L2, 2, -2}})).holds);
  const auto both = check_exponent_system(ExponentSystem(
      kQ, {{inf, FormId::L1, FormId::L2, ratio(1, 2), ratio(-1, 2)}, {two, FormId::L1, FormId::L3, ratio(1, 2), ratio(-1, 2)}}));
  CHECK(both.holds);
  CHECK(both.max_partial == 1);
  CHECK(both.min_partial == -1);

  CHECK_THROWS_AS(ExponentSystem(kQ, {{inf, FormId::L2, FormId::L2, 0, 0}}), DomainError);
  CHECK_THROWS_AS(ExponentSystem(kQ, {{two, FormId::L1, FormId::L2, 0, 0}}), DomainError);
  CHECK_THROWS_AS(ExponentSystem(Field::quadratic(2), {{Place::real(Field::quadratic(2), 0), FormId::L1, FormId::L2, 0, 0}}),
                  DomainError);
}

TEST_CASE("extremal sums agree with subset enumeration") {
  std::mt19937_64 rng(31);
  int holding = 0;
  for (int i = 0; i < 300; ++i) {
    const ExponentSystem sys = oracle::random_exponent_system(rng);
    const bool fast = check_exponent_system(sys).holds;
    REQUIRE(fast == oracle::exponent_system_exhaustive(sys));
    holding += fast;
  }
  CHECK(holding > 10);
}

TEST_CASE("worked system verdicts") {
  const SubspaceQuery q = oracle::worked_query(ratio(1, 2), ratio(-1, 2));
  CHECK(satisfies_system(vec(1, 0), q));
  CHECK_FALSE(satisfies_system(vec(0, 1), q));
  CHECK_FALSE(satisfies_system(vec(1, 0), oracle::worked_query(ratio(-1, 2), ratio(1, 2))));
  // 100^(2/5) ~ 6.31
  CHECK(satisfies_system(vec(6, 0), q));
  CHECK_FALSE(satisfies_system(vec(7, 0), q));
  CHECK_FALSE(satisfies_system(vec(ratio(1, 2), 0), q));
  CHECK_THROWS_AS(satisfies_system(vec(0, 0), q), DomainError);

  const auto pre = check_query_precondition(q);
  CHECK(pre.q_exceeds_4_pow_delta);
  CHECK_FALSE(pre.q_exceeds_4_pow_inv_delta);
}

TEST_CASE("finite places and the integrality line") {
  const Place inf = Place::real(kQ);
  const Place two = Place::finite(kQ, Integer(2));
  ExponentSystem sys(kQ, {{inf, FormId::L1, FormId::L2, ratio(1, 2), 0}, {two, FormId::L1, FormId::L2, 0, ratio(-1, 2)}});
  SubspaceQuery q{sys, Rational(4), ratio(1, 10)};
  CHECK(satisfies_system(vec(1, 0), q));
  CHECK_FALSE(satisfies_system(vec(ratio(1, 2), 0), q));  // |1/2|_2 = 2 > 4^0
  CHECK_FALSE(satisfies_system(vec(ratio(1, 3), 0), q));  // 3 is outside S
  q.integral_inside_s = true;
  CHECK(satisfies_system(vec(ratio(1, 3), 0), q));
}

TEST_CASE("real quadratic places") {
  const Field k = Field::quadratic(2);
  ExponentSystem sys(k, {{Place::real(k, 0), FormId::L1, FormId::L2, ratio(1, 2), ratio(-1, 2)},
                         {Place::real(k, 1), FormId::L1, FormId::L2, ratio(1, 2), ratio(-1, 2)}});
  const SubspaceQuery q{sys, Rational(100), ratio(1, 10)};
  const FieldElement unit(Rational(1), Rational(1), k);
  CHECK(satisfies_system(vec(unit, 0), q));
  CHECK_FALSE(satisfies_system(vec(FieldElement(70), 0), q));
  // 100^(9/10) ~ 63.1: 60 + sqrt 2 passes at inf0 only if below it
  CHECK(satisfies_system(vec(FieldElement(Rational(61), Rational(1), k), 0), q));
  CHECK_FALSE(satisfies_system(vec(FieldElement(Rational(62), Rational(1), k), 0), q));
  CHECK_FALSE(satisfies_system(vec(unit, unit), q));
}

TEST_CASE("clustering") {
  std::vector<std::vector<FieldElement>> pts = {vec(1, 2), vec(2, 4), vec(3, 6)};
  auto one = cluster_into_lines(pts);
  REQUIRE(one.size() == 1);
  CHECK(one[0].count == 3);
  CHECK(one[0].representative == ProjectivePoint{1, 2});
  CHECK(cluster_into_lines(std::vector<std::vector<FieldElement>>{vec(1, 0), vec(0, 1)}).size() == 2);
  CHECK(cluster_into_lines(std::vector<std::vector<FieldElement>>{}).empty());
  CHECK_THROWS_AS(cluster_into_lines(std::vector<std::vector<FieldElement>>{vec(0, 0)}), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-6, 6);
  std::vector<std::vector<FieldElement>> many;
  for (int i = 0; i < 60; ++i) {
    int a = c(rng), b = c(rng);
    if (a == 0 && b == 0) a = 1;
    many.push_back(vec(a, b));
  }
  const auto base = cluster_into_lines(many);
  auto shuffled = many;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  for (auto& x : shuffled) {
    const Rational s = ratio(c(rng) == 0 ? 5 : c(rng) + 7, 3);
    x = vec(x[0] * s, x[1] * s);
  }
  const auto again = cluster_into_lines(shuffled);
  REQUIRE(again.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(again[i].representative == base[i].representative);
    CHECK(again[i].count == base[i].count);
  }
}

TEST_CASE("line count bound") {
  const Interval b9 = line_count_bound(ratio(1, 9), 64);
  CHECK(b9.overlaps(oracle::around(oracle::kLineBound19)));
  CHECK(line_count_bound(ratio(1, 3), 64).overlaps(oracle::around(oracle::kLineBound13)));
  CHECK_THROWS_AS(line_count_bound(1, 64), DomainError);
  CHECK_THROWS_AS(line_count_bound(0, 64), DomainError);
}

TEST_CASE("box scan") {
  const SubspaceQuery q = oracle::worked_query(ratio(1, 2), ratio(-1, 2));
  const BoxScan scan = scan_box(q, 40, 4);
  CHECK(scan.solutions.size() == 2);  // (+-1, 0)
  REQUIRE(scan.lines.size() == 1);
  CHECK(scan.lines[0].representative == ProjectivePoint{1, 0});
  CHECK(Interval(Rational(static_cast<long>(scan.lines.size()))).lo() < line_count_bound(ratio(1, 10), 64).hi());
  const BoxScan serial = scan_box(q, 40, 1);
  CHECK(serial.examined == scan.examined);
  CHECK(serial.solutions.size() == scan.solutions.size());
}
