#include <benchmark/benchmark.h>

#include "hyperis/cluster.hpp"
#include "hyperis/exact_counting.hpp"
#include "hyperis/instance_lab.hpp"
#include "hyperis/polymer.hpp"

using namespace hyperis;

static void BM_CountIndependentSets(benchmark::State& state) {
  const auto g = gen_linear_regular(3, static_cast<std::uint32_t>(state.range(0)), 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_independent_sets(g));
}
BENCHMARK(BM_CountIndependentSets)->Arg(6)->Arg(10)->Arg(14);

static void BM_PartitionFunction(benchmark::State& state) {
  const auto g = gen_linear_regular(3, 6, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(partition_function(g, 0, static_cast<std::uint32_t>(state.range(0))));
}
BENCHMARK(BM_PartitionFunction)->Arg(1)->Arg(2);

static void BM_EnumeratePolymers(benchmark::State& state) {
  const auto g = gen_linear_regular(3, 30, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_polymers(g, 0, static_cast<std::uint32_t>(state.range(0))));
}
BENCHMARK(BM_EnumeratePolymers)->Arg(2)->Arg(3)->Arg(4);

static void BM_TruncatedLogXi(benchmark::State& state) {
  const auto g = gen_linear_regular(3, 12, 2, 1);
  const auto t = static_cast<std::uint32_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_log_xi(g, 0, t, threads));
}
BENCHMARK(BM_TruncatedLogXi)->Args({2, 1})->Args({3, 1})->Args({3, 4});

static void BM_GenerateGirth5(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_linear_regular(3, static_cast<std::uint32_t>(state.range(0)), 2, seed++, 5));
  }
}
BENCHMARK(BM_GenerateGirth5)->Arg(8)->Arg(16);
BENCHMARK_MAIN();
