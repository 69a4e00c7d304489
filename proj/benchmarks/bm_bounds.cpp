#include <benchmark/benchmark.h>

#include "dml/bounds/bounds.hpp"

namespace dml {
namespace {

void BM_LineBoundDerivation(benchmark::State& state) {
  const Rational delta(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_line_bound_derivation(delta, 128));
}
BENCHMARK(BM_LineBoundDerivation)->Arg(2)->Arg(9)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_FinalCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_final_count_arithmetic(state.range(0)));
}
BENCHMARK(BM_FinalCount)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GapConstants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gap_constants(state.range(0), 128));
}
BENCHMARK(BM_GapConstants)->Arg(20)->Arg(35556)->Arg(2332801);

}  // namespace
}  // namespace dml
