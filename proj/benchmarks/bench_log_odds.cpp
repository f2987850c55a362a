#include <benchmark/benchmark.h>

#include "mmot/log_odds.hpp"

namespace {

void BM_ProbabilityFromLogOdds(benchmark::State& state) {
  double l = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmot::probabilityFromLogOdds(l));
    l += 0.001;
    if (l > 3.5) l = -2.0;
  }
}
BENCHMARK(BM_ProbabilityFromLogOdds);

void BM_LogOddsRoundTrip(benchmark::State& state) {
  double p = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mmot::probabilityFromLogOdds(mmot::logOddsFromProbability(p)));
    p += 0.0001;
    if (p > 0.99) p = 0.01;
  }
}
BENCHMARK(BM_LogOddsRoundTrip);

}  // namespace

BENCHMARK_MAIN();
