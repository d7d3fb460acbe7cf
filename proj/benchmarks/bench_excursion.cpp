#include <benchmark/benchmark.h>

#include "slelab/excursion.hpp"
#include "slelab/extremal_length.hpp"

using namespace slelab;

static void RectangleExcursion(benchmark::State& state) {
  std::uint64_t sid = 0;
  for (auto _ : state) {
    rng::RandomStream stream(11, sid++);
    auto p = excursion::sample_rectangle_excursion(3.0, 0.01, 1e-4, stream);
    benchmark::DoNotOptimize(p.crossed);
  }
}
BENCHMARK(RectangleExcursion);

static void AnnulusExcursion(benchmark::State& state) {
  std::uint64_t sid = 0;
  for (auto _ : state) {
    rng::RandomStream stream(12, sid++);
    auto p = excursion::sample_annulus_excursion(0.1, 0.01, 1e-4, stream);
    benchmark::DoNotOptimize(p.hit_inner);
  }
}
BENCHMARK(AnnulusExcursion);

static void GridResistance(benchmark::State& state) {
  auto mask = excursion::annulus_mask(0.3, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(excursion::grid_resistance(mask));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(GridResistance)->Arg(64)->Arg(128)->Arg(256)->Complexity();
