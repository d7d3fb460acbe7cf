#include <benchmark/benchmark.h>

#include "slelab/loewner.hpp"

using namespace slelab;

static void RadialGridEvolution(benchmark::State& state) {
  std::size_t grid = state.range(0);
  std::vector<double> angles(grid);
  for (std::size_t i = 0; i < grid; ++i)
    angles[i] = (i + 0.5) * 6.283185307179586 / grid;
  loewner::RadialConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 1e-3;
  std::uint64_t sid = 0;
  for (auto _ : state) {
    rng::RandomStream stream(7, sid++);
    auto run = loewner::simulate_radial(cfg, loewner::RadialStop::capacity(1.0),
                                        angles, stream);
    benchmark::DoNotOptimize(run.state.angles.data());
  }
  state.SetItemsProcessed(state.iterations() * grid * 1000);
}
BENCHMARK(RadialGridEvolution)->Arg(64)->Arg(256);

static void ChordalTwoPoints(benchmark::State& state) {
  loewner::ChordalConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 1e-4;
  std::uint64_t sid = 0;
  for (auto _ : state) {
    rng::RandomStream stream(8, sid++);
    auto run = loewner::simulate_chordal(cfg, 1.0, {-1.0, 1.0}, stream,
                                         loewner::ChordalStopRule::AnySwallowed);
    benchmark::DoNotOptimize(run.t);
  }
}
BENCHMARK(ChordalTwoPoints);

static void TipEvaluation(benchmark::State& state) {
  loewner::RadialConfig cfg;
  cfg.kappa = 6.0;
  cfg.dt = 1e-3;
  rng::RandomStream stream(9, 0);
  auto run = loewner::simulate_radial(
      cfg, loewner::RadialStop::capacity(state.range(0) * 1e-3), {}, stream);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        loewner::radial_tip(run.driving, run.driving.values.size() - 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(TipEvaluation)->Range(256, 4096)->Complexity();
