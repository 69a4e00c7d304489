#include <benchmark/benchmark.h>

#include "dml/index/multihomog.hpp"

namespace dml {
namespace {

/// Dense P in m blocks of degree r with coefficients 1..N, at (1, 1) in each block.
MultihomogPolynomial dense(int m, int r) {
  MultihomogPolynomial p(std::vector<int>(m, r));
  std::vector<int> e(m, 0);
  long c = 1;
  for (;;) {
    p.add_term(e, FieldElement(c++ % 5 - 2));
    int h = 0;
    while (h < m && ++e[h] > r) e[h++] = 0;
    if (h == m) break;
  }
  return p;
}

void BM_Index(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const auto p = dense(m, r);
  const std::vector<ProjectivePoint> points(m, ProjectivePoint{1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(index(p, points));
}
BENCHMARK(BM_Index)->Args({1, 8})->Args({2, 3})->Args({3, 3})->Args({2, 7});

}  // namespace
}  // namespace dml
