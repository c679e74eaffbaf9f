// Serial reference enumerator against the orbit-reduced OpenMP census.
// Args: query index, then worker count for the parallel kernel.
#include <benchmark/benchmark.h>

#include "qdt/census.hpp"

namespace {

using namespace qdt;

CensusQuery query(int which) {
  CensusQuery q;
  switch (which) {
    case 0:  // commuting pairs, full classification
      q.quiver = quivers::jordan();
      q.dim = DimVector({2});
      q.p = 3;
      q.relations = Relations::preprojective;
      q.classification = Classification::full;
      break;
    case 1:
      q.quiver = quivers::a2();
      q.dim = DimVector({2, 2});
      q.p = 3;
      q.relations = Relations::preprojective;
      q.classification = Classification::absolute;
      break;
    default:  // pure point count
      q.quiver = quivers::loops(2);
      q.dim = DimVector({2});
      q.p = 7;
      break;
  }
  return q;
}

void BM_reference(benchmark::State& state) {
  const CensusQuery q = query(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_census_reference(q));
}

void BM_parallel(benchmark::State& state) {
  const CensusQuery q = query(static_cast<int>(state.range(0)));
  CensusOptions o;
  o.workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_census(q, o));
}

}  // namespace

BENCHMARK(BM_reference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->ArgsProduct({{0, 1, 2}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
