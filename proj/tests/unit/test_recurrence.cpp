#include <random>

#include "doctest.h"
#include "dml/error.hpp"
#include "dml/recurrence/recurrence.hpp"

using namespace dml;

namespace {

std::vector<long> range_of(std::initializer_list<long> xs) { return xs; }

BinaryRecurrence fibonacci() { return {1, 1, 0, 1}; }

}  // namespace

TEST_CASE("roots of unity") {
  CHECK(root_of_unity_order(-1) == 2);
  CHECK(root_of_unity_order(1) == 1);
  CHECK(root_of_unity_order(FieldElement(ratio(1, 2), ratio(1, 2), Field::quadratic(-3))) == 6);
  CHECK(root_of_unity_order(FieldElement(ratio(-1, 2), ratio(1, 2), Field::quadratic(-3))) == 3);
  CHECK(root_of_unity_order(FieldElement(0, 1, Field::quadratic(-1))) == 4);
  CHECK_FALSE(root_of_unity_order(2));
  CHECK_FALSE(root_of_unity_order(FieldElement(ratio(3, 5), ratio(4, 5), Field::quadratic(-1))));
  CHECK_THROWS_AS(root_of_unity_order(0), DomainError);
}

TEST_CASE("unit equation examples") {
  auto r1 = solve_unit_equation({1, -1, 2, 3}, 100);
  CHECK(r1.solutions == range_of({1}));
  REQUIRE(r1.certificate);
  CHECK(r1.certificate->first.dominant_term == "b*beta^m");
  CHECK(r1.certificate->second.dominant_term == "1");
  CHECK(r1.bound.within);
  CHECK(r1.bound.bound == Integer("144115188075855872"));

  auto r2 = solve_unit_equation({ratio(-1, 2), ratio(-1, 2), 2, ratio(1, 2)}, 100);
  CHECK(r2.solutions == range_of({0}));
  CHECK(r2.certificate);

  CHECK_THROWS_AS(solve_unit_equation({1, 1, -1, -1}, 100), HypothesisViolation);
  CHECK_THROWS_AS(solve_unit_equation({1, 1, 0, 2}, 100), DomainError);
}

TEST_CASE("certificates survive doubling the range") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> small(-4, 4), base(-5, 5);
  int certified = 0;
  for (int i = 0; i < 150; ++i) {
    const int al = base(rng), be = base(rng);
    if (al == 0 || be == 0) continue;
    UnitEquationProblem p{small(rng), small(rng), al, be};
    if (root_of_unity_order(p.alpha) && root_of_unity_order(p.beta)) continue;
    const auto narrow = solve_unit_equation(p, 8);
    if (!narrow.certificate) continue;
    ++certified;
    const auto wide = solve_unit_equation(p, 16);
    INFO(p.a.to_string(), " ", p.b.to_string(), " ", p.alpha.to_string(), " ", p.beta.to_string());
    CHECK(wide.solutions == narrow.solutions);
  }
  CHECK(certified > 30);
}

TEST_CASE("unit equation over quadratic fields") {
  const Field k = Field::quadratic(5);
  const FieldElement phi(ratio(1, 2), ratio(1, 2), k);
  const FieldElement psi = phi.conjugate();
  // phi^m + psi^m = L_m, so  -phi^m/3 - psi^m/3 + 1 = 0  iff  L_m = 3 (m = 2)
  auto r = solve_unit_equation({FieldElement(ratio(-1, 3)), FieldElement(ratio(-1, 3)), phi, psi}, 40);
  CHECK(r.solutions == range_of({-2, 2}));
  // a Gaussian case: i is a root of unity, 1 + i is not
  const Field g = Field::quadratic(-1);
  const FieldElement i(0, 1, g);
  auto s = solve_unit_equation({FieldElement(-1), FieldElement(0), i, FieldElement(Rational(1), Rational(1), g)}, 12);
  CHECK(s.solutions == range_of({-12, -8, -4, 0, 4, 8, 12}));
  CHECK_FALSE(s.certificate);
}

TEST_CASE("binary recurrence multiplicities") {
  auto zeros = multiplicity_count(fibonacci(), 0, -30, 30);
  CHECK(zeros.solutions == range_of({0}));
  auto ones = multiplicity_count(fibonacci(), 1, -10, 10);
  CHECK(ones.solutions == range_of({-1, 1, 2}));
  CHECK(ones.bound.within);
  CHECK_THROWS_AS(multiplicity_count({0, -1, 0, 1}, 0, -5, 5), HypothesisViolation);
  CHECK_THROWS_AS(multiplicity_count({1, 0, 0, 1}, 0, -5, 5), DomainError);
  // roots 2 and -2: ratio -1
  CHECK_THROWS_AS(check_binary_hypothesis({0, 4, 1, 1}), HypothesisViolation);
  // repeated root 2 is fine
  CHECK_NOTHROW(check_binary_hypothesis({4, -4, 1, 1}));
  // over Q(i) with discriminant -1 + 8i having no square root there
  const Field g = Field::quadratic(-1);
  CHECK_THROWS_AS(characteristic_roots({FieldElement(0, 1, g), FieldElement(2), 0, 1}), UnsupportedError);
}

TEST_CASE("recurrence terms match the closed form") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> c(-6, 6);
  int tested = 0;
  while (tested < 100) {
    BinaryRecurrence r{c(rng), c(rng), ratio(c(rng), 1 + std::abs(c(rng))), c(rng)};
    if (r.nu0.is_zero()) continue;
    const CharacteristicRoots roots = characteristic_roots(r);
    if (roots.alpha1 == roots.alpha2) continue;
    const FieldElement u0 = r.u0.in(roots.field), u1 = r.u1.in(roots.field);
    const FieldElement a = (u1 - u0 * roots.alpha2) * (roots.alpha1 - roots.alpha2).inverse();
    const FieldElement b = u0 - a;
    const auto terms = binary_terms(r, -50, 50);
    for (long m = -50; m <= 50; ++m) {
      REQUIRE(terms[static_cast<std::size_t>(m + 50)] == a * pow(roots.alpha1, m) + b * pow(roots.alpha2, m));
    }
    // backward from two late terms recovers the seeds
    BinaryRecurrence late{r.nu1, r.nu0, terms[90], terms[91]};
    const auto back = binary_terms(late, -40, 0);
    CHECK(back[0] == r.u0);
    CHECK(back[1] == r.u1);
    ++tested;
  }
}

TEST_CASE("ternary zero multiplicity") {
  const TernaryRecurrence t{2, 1, -2, 0, -1, 3};
  auto z = ternary_zero_count(t, 0, 50);
  CHECK(z.solutions == range_of({0}));
  CHECK(z.bound.within);
  CHECK_FALSE(z.notes.empty());
  const auto v = ternary_terms(t, -6, 12);
  for (long m = -6; m <= 12; ++m) {
    const Rational expect = pow(Rational(2), m) + (m % 2 == 0 ? 1 : -1) - 2;
    CHECK(v[static_cast<std::size_t>(m + 6)] == FieldElement(expect));
  }
  auto none = ternary_zero_count({2, 1, -2, 1, 2, 4}, -10, 10);
  CHECK(none.solutions.empty());
  CHECK_THROWS_AS(ternary_zero_count({2, 1, -2, 0, 0, 0}, 0, 5), HypothesisViolation);
  // roots 1, -1, and 1 again fails distinctness only, so it is accepted
  CHECK_NOTHROW(check_ternary_hypothesis({1, 1, -1, 1, 0, 0}));
  // z^3 - 1: roots 1, w, w^2 all ratios roots of unity
  CHECK_THROWS_AS(check_ternary_hypothesis({0, 0, 1, 1, 0, 0}), HypothesisViolation);
  // z^3 - 2 has no rational root
  CHECK_THROWS_AS(check_ternary_hypothesis({0, 0, 2, 1, 0, 0}), UnsupportedError);
}
