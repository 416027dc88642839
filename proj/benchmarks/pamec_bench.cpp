#include <benchmark/benchmark.h>

#include "pamec/orchestrator.hpp"
#include "pamec/radiation_power.hpp"
#include "pamec/time_alloc.hpp"

namespace {

pamec::Scenario scenario(int antennas) {
  pamec::ScenarioConfig cfg;
  cfg.num_antennas = antennas;
  cfg.rng_seed = 3;
  return pamec::make_scenario(cfg);
}

void BM_DownlinkGain(benchmark::State& state) {
  const auto scen = scenario(static_cast<int>(state.range(0)));
  const auto layout = pamec::fixed_pa_layout(scen.config);
  const auto w = pamec::RadiationVector::uniform(scen.num_antennas());
  for (auto _ : state) {
    double sum = 0.0;
    for (const auto& dev : scen.devices.positions) {
      sum += pamec::aggregate_downlink_gain(layout, w, dev, scen.config.waveguide_height, scen.consts);
    }
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_DownlinkGain)->Arg(4)->Arg(16)->Arg(64);

void BM_UplinkPso(benchmark::State& state) {
  const auto scen = scenario(4);
  const auto init = pamec::init_solution(scen);
  pamec::Fitness fit = [&](std::span<const double> xs) { return pamec::uplink_fitness(xs, scen, init.alloc.p); };
  pamec::Rng rng(1);
  for (auto _ : state) {
    auto res = pamec::run_pso(fit, pamec::placement_bounds(scen.config), pamec::PsoParams{}, rng);
    benchmark::DoNotOptimize(res.best_fitness);
  }
}
BENCHMARK(BM_UplinkPso)->Unit(benchmark::kMillisecond);

void BM_RadiationSca(benchmark::State& state) {
  const auto scen = scenario(4);
  const auto init = pamec::init_solution(scen);
  const auto g = pamec::uplink_gains(init.uplink, scen);
  const auto chan = pamec::build_effective_channels(init.downlink, scen, g, init.alloc.tau1);
  for (auto _ : state) {
    auto res = pamec::optimize_radiation(chan, init.w);
    benchmark::DoNotOptimize(res.w.alpha.data());
  }
}
BENCHMARK(BM_RadiationSca);

void BM_TimeAlloc(benchmark::State& state) {
  const auto scen = scenario(4);
  const auto prob = pamec::make_time_alloc_problem(pamec::init_solution(scen), scen);
  for (auto _ : state) {
    auto res = pamec::solve_time_alloc(prob);
    benchmark::DoNotOptimize(res.objective);
  }
}
BENCHMARK(BM_TimeAlloc);

void BM_ProposedScheme(benchmark::State& state) {
  const auto scen = scenario(4);
  for (auto _ : state) {
    auto res = pamec::run_baseline(pamec::SchemeId::proposed, scen, pamec::AoOptions{}, 3);
    benchmark::DoNotOptimize(res.state.objective);
  }
}
BENCHMARK(BM_ProposedScheme)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
