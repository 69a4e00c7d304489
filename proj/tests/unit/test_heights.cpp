#include "doctest.h"

#include <random>

#include "dml/error.hpp"
#include "dml/exact/transcendental.hpp"
#include "dml/heights/heights.hpp"
#include "dml/heights/places.hpp"
#include "oracle_values.hpp"

using namespace dml;
using dml::oracle::around;

namespace {

const Field kQ = Field::rationals();
const Field kGauss = Field::quadratic(-1);
const Field kSqrt2 = Field::quadratic(2);

Rational random_rational(std::mt19937_64& rng, long span) {
  std::uniform_int_distribution<long> num(-span, span), den(1, span);
  return ratio(Integer(num(rng)), Integer(den(rng)));
}

Rational random_nonzero(std::mt19937_64& rng, long span) {
  for (;;) {
    Rational q = random_rational(rng, span);
    if (q != 0) return q;
  }
}

}  // namespace

TEST_CASE("splitting of rational primes in quadratic fields") {
  CHECK(splitting_type(kGauss, Integer(2)) == Splitting::Ramified);
  CHECK(splitting_type(kGauss, Integer(3)) == Splitting::Inert);
  CHECK(splitting_type(kGauss, Integer(5)) == Splitting::Split);
  CHECK(splitting_type(Field::quadratic(5), Integer(2)) == Splitting::Inert);
  CHECK(splitting_type(Field::quadratic(17), Integer(2)) == Splitting::Split);
  CHECK(splitting_type(Field::quadratic(-7), Integer(2)) == Splitting::Split);
  CHECK(splitting_type(Field::quadratic(3), Integer(3)) == Splitting::Ramified);
  CHECK(splitting_type(kQ, Integer(7)) == Splitting::None);

  CHECK(places_above(kGauss, Integer(5)).size() == 2);
  CHECK(places_above(kGauss, Integer(3)).front().residue_norm() == 9);
  CHECK(infinite_places(kSqrt2).size() == 2);
  CHECK(infinite_places(kGauss).front().kind() == PlaceKind::Complex);
  CHECK_THROWS_AS(Place::finite(kQ, Integer(6)), DomainError);
}

TEST_CASE("place names round-trip") {
  for (const Field& f : {kQ, kGauss, kSqrt2, Field::quadratic(-7)}) {
    std::vector<Place> all = infinite_places(f);
    for (long p : {2, 3, 5, 7, 11, 13}) {
      for (const Place& v : places_above(f, Integer(p))) all.push_back(v);
    }
    for (const Place& v : all) CHECK(Place::from_name(f, v.name()) == v);
  }
  CHECK_THROWS_AS(Place::from_name(kGauss, "5"), DomainError);
  CHECK_THROWS_AS(Place::from_name(kGauss, "3.1"), DomainError);
  CHECK_THROWS_AS(Place::from_name(kQ, "inf0"), DomainError);
}

TEST_CASE("orders at split primes") {
  // 5 = (2+i)(2-i); exactly one of the two places above 5 divides 2+i
  const FieldElement x(Rational(2), Rational(1), kGauss);
  auto above = places_above(kGauss, Integer(5));
  const long o0 = order_at(x, above[0]);
  const long o1 = order_at(x, above[1]);
  CHECK(o0 + o1 == 1);
  CHECK(order_at(x * x * x, above[0]) == 3 * o0);
  CHECK(order_at(FieldElement(25).in(kGauss), above[1]) == 2);
  // (1+sqrt(17))/2 has norm -4; 2 splits in Q(sqrt 17)
  const Field f17 = Field::quadratic(17);
  const FieldElement y(ratio(1, 2), ratio(1, 2), f17);
  auto twos = places_above(f17, Integer(2));
  CHECK(order_at(y, twos[0]) + order_at(y, twos[1]) == 2);
  CHECK(order_at(y * y.conjugate(), twos[0]) == 2);
}

TEST_CASE("absolute values") {
  CHECK(absolute_value(ratio(-6, 5), Place::finite(kQ, Integer(5)), 64) == Interval(5));
  CHECK(absolute_value(0, Place::finite(kQ, Integer(5)), 64) == Interval(0));
  CHECK(absolute_value(0, infinite_places(kGauss).front(), 64) == Interval(0));
  const FieldElement one_plus_i(Rational(1), Rational(1), kGauss);
  const Place two = Place::finite(kGauss, Integer(2));
  CHECK(two.splitting() == Splitting::Ramified);
  CHECK(two.residue_norm() == 2);
  const Interval v = absolute_value(one_plus_i, two, 80);
  CHECK(v.overlaps(around(dml::oracle::kInvSqrt2)));
  CHECK(v.width() <= pow(Rational(2), -80));
  CHECK_THROWS_AS(absolute_value(one_plus_i, Place::finite(kSqrt2, Integer(3)), 64), DomainError);
}

TEST_CASE("product formula examples") {
  auto r = check_product_formula(ratio(-6, 5), 64);
  CHECK(r.exact);
  CHECK(r.holds);
  CHECK(r.product == Interval(1));
  CHECK(r.places.size() == 4);

  auto one = check_product_formula(1, 64);
  CHECK(one.product == Interval(1));

  auto three = check_product_formula(FieldElement(3).in(kGauss), 64);
  CHECK(three.exact);
  CHECK(three.product == Interval(1));
  REQUIRE(three.factors.size() == 2);
  CHECK(three.factors[0] == Interval(3));
  CHECK(three.factors[1] == Interval(ratio(1, 3)));
  CHECK_THROWS_AS(check_product_formula(0, 64), DomainError);
}

TEST_CASE("product formula on random elements") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto r = check_product_formula(random_nonzero(rng, 100000), 64);
    REQUIRE(r.exact);
    REQUIRE(r.product == Interval(1));
  }
  const Rational tol = ratio(1, Integer("1000000000000000"));
  for (long d : {-1, 2, -3, 5, 6, -7, 17, -15}) {
    const Field f = Field::quadratic(d);
    for (int i = 0; i < 15; ++i) {
      FieldElement x(random_rational(rng, 500), random_nonzero(rng, 500), f);
      auto r = check_product_formula(x, 64);
      INFO(x.to_string());
      REQUIRE(r.holds);
      REQUIRE(r.product.width() <= tol);
    }
  }
}

TEST_CASE("heights of points and forms") {
  CHECK(height_point(ProjectivePoint{3, 4}, 64) == Interval(5));
  CHECK(height_point(ProjectivePoint{1, 0}, 64) == Interval(1));
  const Interval h24 = height_point(ProjectivePoint{2, 4}, 100);
  CHECK(h24.overlaps(around(dml::oracle::kSqrt5)));
  CHECK(h24 == height_point(ProjectivePoint{1, 2}, 100));
  CHECK(height_linear_form(BinaryLinearForm(1, 1), 100).overlaps(around(dml::oracle::kSqrt2)));
  CHECK(height_linear_form(BinaryLinearForm(1, 0), 64) == Interval(1));
  const Interval big = height_linear_form(BinaryLinearForm(1, FieldElement(Rational(-1000000))), 100);
  CHECK(big.overlaps(around("1000000.0000004999999999998750000000000624999999999609375")));
  CHECK_THROWS_AS(ProjectivePoint({0, 0}), DomainError);
  CHECK_THROWS_AS(BinaryLinearForm(0, 0), DomainError);

  // (3,4) viewed in other fields keeps height 5
  for (const Field& f : {kGauss, kSqrt2}) {
    CHECK(height_point(ProjectivePoint{FieldElement(3).in(f), FieldElement(4).in(f)}, 64) == Interval(5));
  }
  // a point with a genuinely quadratic coordinate: (1, i) has height sqrt 2
  CHECK(height_point(ProjectivePoint{1, FieldElement(0, 1, kGauss)}, 100).overlaps(around(dml::oracle::kSqrt2)));
}

TEST_CASE("height invariances") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    ProjectivePoint x{random_rational(rng, 1000), random_nonzero(rng, 1000), random_rational(rng, 50)};
    const Interval hq = height_point(x, 80);
    CHECK(hq.lo() >= 1);
    for (const Field& f : {kSqrt2, kGauss}) {
      std::vector<FieldElement> c;
      for (const auto& a : x.coords()) c.push_back(a.in(f));
      const Interval hk = height_point(ProjectivePoint(c), 80);
      CHECK(hk.width() <= pow(Rational(2), -70));
      CHECK(hk.overlaps(hq));
    }
    const Rational lambda = random_nonzero(rng, 999);
    std::vector<FieldElement> scaled;
    for (const auto& a : x.coords()) scaled.push_back(a * lambda);
    CHECK(height_point(ProjectivePoint(scaled), 80) == hq);
  }
  for (long d : {2, -1, -3, 7}) {
    const Field f = Field::quadratic(d);
    for (int i = 0; i < 25; ++i) {
      ProjectivePoint x{FieldElement(random_rational(rng, 60), random_rational(rng, 60), f),
                        FieldElement(random_nonzero(rng, 60), random_rational(rng, 60), f)};
      FieldElement lambda(random_rational(rng, 40), random_nonzero(rng, 40), f);
      const Interval h = height_point(x, 90);
      CHECK(h.lo() >= 1 - pow(Rational(2), -90));
      const Interval hs = height_point(ProjectivePoint{x[0] * lambda, x[1] * lambda}, 90);
      CHECK(hs.overlaps(h));
      CHECK(exact_height(x.coords()).radicand ==
            exact_height(std::vector<FieldElement>{x[0] * lambda, x[1] * lambda}).radicand);
    }
  }
}

TEST_CASE("log heights") {
  const Interval l = log_height_point(ProjectivePoint{1, 1}, 100);
  CHECK(l.width() <= pow(Rational(2), -100));
  CHECK(l.overlaps(Interval(around(dml::oracle::kLn2).lo() / 2, around(dml::oracle::kLn2).hi() / 2)));
  CHECK(log_height_point(ProjectivePoint{3, 4}, 64).overlaps(enclose_log(Rational(5), 80)));
}
