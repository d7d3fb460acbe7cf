#include <benchmark/benchmark.h>

#include "slelab/walk.hpp"

using namespace slelab;

static void WalkSimulate(benchmark::State& state) {
  std::uint64_t sid = 0;
  for (auto _ : state) {
    rng::RandomStream stream(21, sid++);
    auto p = walk::simulate_walk(state.range(0), {0, 0}, stream);
    benchmark::DoNotOptimize(p.positions.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(WalkSimulate)->Range(1 << 10, 1 << 16);

static void CutPoints(benchmark::State& state) {
  rng::RandomStream stream(22, 0);
  auto p = walk::simulate_walk(state.range(0), {0, 0}, stream);
  for (auto _ : state) benchmark::DoNotOptimize(walk::cut_points(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(CutPoints)->Range(1 << 10, 1 << 16)->Complexity();

static void FrontierExtraction(benchmark::State& state) {
  rng::RandomStream stream(23, 0);
  auto p = walk::simulate_walk(state.range(0), {0, 0}, stream);
  for (auto _ : state) benchmark::DoNotOptimize(walk::frontier_sites(p));
}
BENCHMARK(FrontierExtraction)->Arg(1 << 14)->Arg(1 << 16);
