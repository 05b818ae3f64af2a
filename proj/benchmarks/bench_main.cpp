#include <benchmark/benchmark.h>

#include <map>

#include "invreg/estimator.hpp"
#include "invreg/maps.hpp"
#include "invreg/pilot.hpp"
#include "invreg/rng.hpp"

namespace {

using namespace invreg;

const Dataset& swirl_data(std::size_t n) {
  static std::map<std::size_t, Dataset> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, sample_dataset(swirl_truth(), n, 1e-3, 0)).first;
  }
  return it->second;
}

void BM_KnnQuery(benchmark::State& state) {
  const KnnRegressor knn(swirl_data(static_cast<std::size_t>(state.range(0))), 10);
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(knn.predict(rng.uniform_square()));
  }
}
BENCHMARK(BM_KnnQuery)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_BuildMesh(benchmark::State& state) {
  const PlanarMap pilot = knn_fit(swirl_data(10000), 10);
  const MapFn g = g_hat(pilot, estimate_rotation(pilot));
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mesh(g, t));
  }
}
BENCHMARK(BM_BuildMesh)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  const auto est = InvertibleEstimator::fit(swirl_data(10000), {10, 1.0, static_cast<int>(state.range(0))});
  Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(est.evaluate(rng.uniform_square()));
  }
}
BENCHMARK(BM_Evaluate)->Arg(5)->Arg(32);

void BM_Invert(benchmark::State& state) {
  const auto est = InvertibleEstimator::fit(swirl_data(10000), {10, 1.0, static_cast<int>(state.range(0))});
  Rng rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(est.invert(rng.uniform_square()));
  }
}
BENCHMARK(BM_Invert)->Arg(5)->Arg(32);

void BM_Certifier(benchmark::State& state) {
  const PlanarMap f = family_map(BumpParams::random(3, 7, 0), BumpParams::random(3, 7, 1));
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_invertible_on_grid(f, r, 100));
  }
}
BENCHMARK(BM_Certifier)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
