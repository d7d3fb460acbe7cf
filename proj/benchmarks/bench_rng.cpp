#include <benchmark/benchmark.h>

#include "slelab/rng.hpp"

static void StreamU64(benchmark::State& state) {
  slelab::rng::RandomStream s(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.next_u64());
}
BENCHMARK(StreamU64);

static void StreamGaussian(benchmark::State& state) {
  slelab::rng::RandomStream s(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.next_gaussian());
}
BENCHMARK(StreamGaussian);

static void GaussianBlock(benchmark::State& state) {
  slelab::rng::RandomStream s(1, 0);
  for (auto _ : state) {
    auto v = slelab::rng::gaussian_increments(s, state.range(0), 1e-3);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(GaussianBlock)->Range(1024, 1 << 16);
