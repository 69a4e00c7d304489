#include <benchmark/benchmark.h>

#include "dml/heights/heights.hpp"
#include "dml/heights/places.hpp"

namespace dml {
namespace {

void BM_HeightRational(benchmark::State& state) {
  const ProjectivePoint x{Rational(123456, 789), Rational(-98765, 4321)};
  for (auto _ : state) benchmark::DoNotOptimize(height_point(x, state.range(0)));
}
BENCHMARK(BM_HeightRational)->Arg(64)->Arg(256);

void BM_HeightRealQuadratic(benchmark::State& state) {
  const Field k = Field::quadratic(5);
  const ProjectivePoint x{FieldElement(Rational(3), Rational(1, 2), k), FieldElement(Rational(-7, 3), Rational(2), k)};
  for (auto _ : state) benchmark::DoNotOptimize(height_point(x, state.range(0)));
}
BENCHMARK(BM_HeightRealQuadratic)->Arg(64)->Arg(256);

void BM_ProductFormula(benchmark::State& state) {
  const FieldElement x(Rational(360, 7), Rational(-12, 5), Field::quadratic(-3));
  for (auto _ : state) benchmark::DoNotOptimize(check_product_formula(x, 96));
}
BENCHMARK(BM_ProductFormula);

}  // namespace
}  // namespace dml
