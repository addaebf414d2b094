#include <benchmark/benchmark.h>

#include "aoi/eus.h"
#include "aoi/presets.h"
#include "aoi/sim.h"

namespace {

aoi::NetworkConfig bench_network() {
  auto c = aoi::bernoulli_network(0.5, 0.2, 0.2, 10, 0.5);
  c.horizon = 100'000;
  return c;
}

void BM_ReplicationsSerial(benchmark::State& state) {
  const auto config = bench_network();
  const aoi::PolicySpec dpp;
  for (auto _ : state) {
    auto r = aoi::run_experiment_serial(config, dpp, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(r.ewsaoi.mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          static_cast<std::int64_t>(config.horizon));
}

void BM_ReplicationsParallel(benchmark::State& state) {
  const auto config = bench_network();
  const aoi::PolicySpec dpp;
  for (auto _ : state) {
    auto r = aoi::run_experiment(config, dpp, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(r.ewsaoi.mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          static_cast<std::int64_t>(config.horizon));
}

aoi::CyclicSchedule bench_schedule() {
  // Hyperperiod 2*3*5*7*11*13 = 30030.
  return *aoi::construct_eus_periods(std::vector<std::int64_t>{2, 6, 30, 210, 2310, 30030});
}

void BM_CollisionScanSerial(benchmark::State& state) {
  const auto s = bench_schedule();
  for (auto _ : state) benchmark::DoNotOptimize(aoi::scan_hyperperiod_serial(s).collisions);
}

void BM_CollisionScanParallel(benchmark::State& state) {
  const auto s = bench_schedule();
  for (auto _ : state) benchmark::DoNotOptimize(aoi::scan_hyperperiod(s).collisions);
}

}  // namespace

BENCHMARK(BM_ReplicationsSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicationsParallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollisionScanSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CollisionScanParallel)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
