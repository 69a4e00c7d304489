#include <benchmark/benchmark.h>

#include "dml/exact/transcendental.hpp"

namespace dml {
namespace {

void BM_EncloseLog(benchmark::State& state) {
  const Rational x(1000003, 7);
  for (auto _ : state) benchmark::DoNotOptimize(enclose_log(x, state.range(0)));
}
BENCHMARK(BM_EncloseLog)->Arg(64)->Arg(128)->Arg(256)->Arg(1024);

void BM_EncloseExp(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enclose_exp(Rational(52), state.range(0)));
}
BENCHMARK(BM_EncloseExp)->Arg(64)->Arg(256)->Arg(1024);

// exact n! path below 10^4, Stirling above
void BM_LogFactorial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(log_factorial_bounds(state.range(0), 128));
}
BENCHMARK(BM_LogFactorial)->Arg(100)->Arg(10000)->Arg(10001)->Arg(2332881)->Arg(288000001);

}  // namespace
}  // namespace dml
