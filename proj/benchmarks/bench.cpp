#include <benchmark/benchmark.h>

#include "cvqkd/analysis.hpp"
#include "cvqkd/montecarlo.hpp"

namespace {

void BM_SecretKeyRate(benchmark::State& state) {
  const cvqkd::ProtocolParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::secret_key_rate(params).key_rate_bits);
  }
}
BENCHMARK(BM_SecretKeyRate);

void BM_KeyrateGrid(benchmark::State& state) {
  cvqkd::SweepGrid grid;
  for (int d = 0; d <= 10; ++d) grid.distances_km.push_back(d);
  for (int n = 2; n <= 17; ++n) grid.onu_counts.push_back(n);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::keyrate_grid(grid, threads));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(grid.distances_km.size() *
                                                    grid.onu_counts.size()));
}
BENCHMARK(BM_KeyrateGrid)->Arg(1)->Arg(4);

void BM_ToleranceSearch(benchmark::State& state) {
  const cvqkd::ProtocolParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cvqkd::tolerable_excess_noise(params).eps_star);
  }
}
BENCHMARK(BM_ToleranceSearch);

void BM_McSimulate(benchmark::State& state) {
  const cvqkd::ProtocolParams params;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cvqkd::simulate(params, n, 42));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_McSimulate)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
