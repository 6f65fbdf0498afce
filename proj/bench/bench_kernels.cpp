// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "sarsa_arena/harness.hpp"
#include "sarsa_arena/rl_core.hpp"

using namespace sarsa_arena;

namespace {

std::vector<RunConfig> campaign_batch() {
  std::vector<RunConfig> runs;
  for (int level : {1, 3, 5}) {
    RunConfig r;
    r.level = level;
    r.games = 2;
    r.minutes = 1.0;
    r.seed = 3;
    runs.push_back(r);
  }
  return runs;
}

void BM_CampaignsParallel(benchmark::State& state) {
  const Config cfg;
  const auto runs = campaign_batch();
  for (auto _ : state) benchmark::DoNotOptimize(run_campaigns(cfg, runs));
}

void BM_CampaignsSerial(benchmark::State& state) {
  const Config cfg;
  const auto runs = campaign_batch();
  for (auto _ : state) benchmark::DoNotOptimize(run_campaigns_serial(cfg, runs));
}

template <bool Sparse>
void BM_SarsaUpdate(benchmark::State& state) {
  const LearnerConfig cfg;
  QTable table(WeaponCategory::MachineGun);
  Rng rng(17);
  for (auto _ : state) {
    StateId s(rng.below(kStateCount)), sn(rng.below(kStateCount));
    int a = rng.below(kActionCount), an = rng.below(kActionCount);
    double r = rng.uniform(-1, 50);
    if constexpr (Sparse) {
      benchmark::DoNotOptimize(sarsa_update(table, s, a, r, sn, an, cfg));
    } else {
      benchmark::DoNotOptimize(sarsa_update_full_sweep(table, s, a, r, sn, an, cfg));
    }
  }
}

}  // namespace

BENCHMARK(BM_CampaignsParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CampaignsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SarsaUpdate<true>)->Name("BM_SarsaUpdateSparse");
BENCHMARK(BM_SarsaUpdate<false>)->Name("BM_SarsaUpdateFullSweep");

BENCHMARK_MAIN();
