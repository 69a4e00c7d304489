#include <benchmark/benchmark.h>

#include "dml/subspace/subspace.hpp"

namespace dml {
namespace {

SubspaceQuery worked() {
  const Field q = Field::rationals();
  ExponentSystem sys(q, {{Place::real(q), FormId::L1, FormId::L2, Rational(1, 2), Rational(-1, 2)}});
  return {std::move(sys), Rational(100), Rational(1, 10)};
}

void BM_Satisfies(benchmark::State& state) {
  const SystemEvaluator eval(worked());
  const FieldElement x1(Rational(6)), x2(Rational(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval.satisfies(x1, x2));
}
BENCHMARK(BM_Satisfies);

void BM_ScanBox(benchmark::State& state) {
  const auto q = worked();
  for (auto _ : state) benchmark::DoNotOptimize(scan_box(q, state.range(0)));
}
BENCHMARK(BM_ScanBox)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dml
