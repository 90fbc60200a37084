#include <benchmark/benchmark.h>

#include "sndg/arithmetic.h"
#include "sndg/bounds.h"

namespace sndg {
namespace {

void BM_HarmonicReal(benchmark::State& state) {
  double k = static_cast<double>(state.range(0)) + 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(HarmonicReal(k));
  }
}
BENCHMARK(BM_HarmonicReal)->Arg(1)->Arg(100)->Arg(1000000);

void BM_PosUpperBound(benchmark::State& state) {
  const long long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PosUpperBoundLong(n));
  }
}
BENCHMARK(BM_PosUpperBound)->Arg(10)->Arg(1000)->Arg(1000000);

// Exact coefficient table; cost is dominated by the harmonic denominators.
void BM_BoundTerms(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const BoundTerms terms(n);
    for (int l = 1; l <= n; ++l) benchmark::DoNotOptimize(terms.alpha(l));
  }
}
BENCHMARK(BM_BoundTerms)->Arg(10)->Arg(100)->Arg(300);

}  // namespace
}  // namespace sndg
