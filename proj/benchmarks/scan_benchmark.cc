#include <benchmark/benchmark.h>

#include "sndg/deviation.h"
#include "sndg/equilibrium.h"
#include "sndg/generators.h"
#include "sndg/optimum.h"

namespace sndg {
namespace {

Game BenchGame(int players, int vertices, int edges) {
  RandomGameOptions options;
  options.players = players;
  options.vertices = vertices;
  options.edges = edges;
  options.min_cost = 1;
  options.max_cost = 5;
  return RandomInstance(options, 42);
}

// Full profile scan: NE, optimum and minimizers in one pass.
void BM_PriceRatios(benchmark::State& state) {
  const Game game = BenchGame(static_cast<int>(state.range(0)), 6, 10);
  const StrategySpace space = StrategySpace::Build(game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PriceRatios(game, space));
  }
  state.counters["profiles"] = static_cast<double>(space.size());
}
BENCHMARK(BM_PriceRatios)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_EnumerateNash(benchmark::State& state) {
  const Game game = BenchGame(static_cast<int>(state.range(0)), 6, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateNash(game));
  }
}
BENCHMARK(BM_EnumerateNash)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_VerifyLemmas(benchmark::State& state) {
  const Game game = SharedBridgeFamily(static_cast<int>(state.range(0)),
                                       Rational(3, 2), {Rational(1)});
  const StrategyProfile equilibrium = PotentialMinimizers(game).profiles[0];
  const OptimumDecomposition dec =
      DecomposeOptimum(game, SocialOptimum(game));
  for (auto _ : state) {
    for (int pivot = 0; pivot < game.num_players(); ++pivot) {
      benchmark::DoNotOptimize(
          VerifyApplicableLemmas(game, equilibrium, dec, pivot));
    }
  }
}
BENCHMARK(BM_VerifyLemmas)->DenseRange(2, 5);

}  // namespace
}  // namespace sndg
