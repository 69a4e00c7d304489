#include <random>

#include "doctest.h"
#include "dml/error.hpp"
#include "dml/index/multihomog.hpp"
#include "index_oracle.hpp"

using namespace dml;

namespace {

MultihomogPolynomial determinant() {
  // x11*x22 - x12*x21
  return MultihomogPolynomial({1, 1}, {{{1, 0}, 1}, {{0, 1}, -1}});
}

MultihomogPolynomial square_times_linear() {
  // x12^2 * x21
  return MultihomogPolynomial({2, 1}, {{{0, 1}, 1}});
}

}  // namespace

TEST_CASE("vanishing points") {
  CHECK(vanishing_point(BinaryLinearForm(1, 0)) == ProjectivePoint{0, 1});
  CHECK(vanishing_point(BinaryLinearForm(1, 1)) == ProjectivePoint{1, -1});
  CHECK(vanishing_point(BinaryLinearForm(1, FieldElement(Rational(-1000000)))) ==
        ProjectivePoint{FieldElement(Rational(1000000)), 1});
  CHECK_THROWS_AS(BinaryLinearForm(0, 0), DomainError);
}

TEST_CASE("index examples") {
  const std::vector<ProjectivePoint> both_e1 = {{1, 0}, {1, 0}};
  const std::vector<ProjectivePoint> e1_e2 = {{1, 0}, {0, 1}};
  CHECK(index(determinant(), both_e1) == 1);
  CHECK(index(determinant(), e1_e2) == 0);
  CHECK(index(square_times_linear(), e1_e2) == 2);

  const std::vector<BinaryLinearForm> x2x2 = {{0, 1}, {0, 1}};
  const std::vector<BinaryLinearForm> x2x1 = {{0, 1}, {1, 0}};
  CHECK(index_wrt_forms(determinant(), x2x2) == 1);
  CHECK(index_wrt_forms(square_times_linear(), x2x1) == 2);

  CHECK_THROWS_AS(index(MultihomogPolynomial({1, 1}), both_e1), DomainError);
  CHECK_THROWS_AS(index(determinant(), std::vector<ProjectivePoint>{{1, 0}}), DomainError);
  CHECK_THROWS_AS(MultihomogPolynomial({2}, {{{3}, 1}}), DomainError);
}

TEST_CASE("fractional weights") {
  // (x11 - x12)^2 * x21^3 at ((1,1),(1,0)) has block orders 2 and 0
  MultihomogPolynomial p({3, 3});
  p.add_term({2, 3}, 1);
  p.add_term({1, 3}, -2);
  p.add_term({0, 3}, 1);
  // that was degree 2 in block 1 padded with x12; r_1 = 3 gives weight 2/3
  const std::vector<ProjectivePoint> x = {{1, 1}, {1, 0}};
  CHECK(index(p, x) == ratio(2, 3));
  CHECK(index(p, std::vector<ProjectivePoint>{{1, 1}, {0, 1}}) == ratio(2, 3) + 1);
}

TEST_CASE("index agrees with the Taylor oracle") {
  std::mt19937_64 rng(2024);
  int positive = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto inst = oracle::random_index_instance(rng);
    const Rational got = index(inst.p, inst.points);
    INFO(inst.p.to_string());
    REQUIRE(got == oracle::taylor_index(inst.p, inst.points));
    REQUIRE(got >= 0);
    REQUIRE(got <= static_cast<long>(inst.p.blocks()));
    REQUIRE((got == 0) == !inst.p.evaluate(inst.points).is_zero());
    if (got > 0) ++positive;
  }
  CHECK(positive > 80);
}

TEST_CASE("index is independent of basis and scaling") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> small(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = oracle::random_index_instance(rng);
    const Rational base = index(inst.p, inst.points);
    std::vector<BinaryLinearForm> other;
    for (const auto& x : inst.points) {
      for (;;) {
        const int a = small(rng), b = small(rng);
        if (a == 0 && b == 0) continue;
        BinaryLinearForm n(a, b);
        if (!n(x[0], x[1]).is_zero()) {
          other.push_back(n);
          break;
        }
      }
    }
    CHECK(index(inst.p, inst.points, other) == base);
    std::vector<ProjectivePoint> scaled;
    for (const auto& x : inst.points) scaled.push_back(ProjectivePoint{x[0] * ratio(-3, 7), x[1] * ratio(-3, 7)});
    CHECK(index(inst.p, scaled) == base);
    CHECK(index(inst.p.scaled(ratio(5, 2)), inst.points) == base);
  }
}

TEST_CASE("index over a quadratic field") {
  const Field k = Field::quadratic(2);
  const FieldElement s = FieldElement::sqrt_d(k);
  // (x11 - sqrt2 x12)^2 in one block, at (sqrt2, 1)
  MultihomogPolynomial p({2}, {{{2}, 1}, {{1}, -2 * s}, {{0}, 2}});
  const std::vector<ProjectivePoint> at = {ProjectivePoint{s, 1}};
  CHECK(index(p, at) == 1);
  CHECK(index(p, std::vector<ProjectivePoint>{ProjectivePoint{-s, 1}}) == 0);
}
