// Parallel kernels against their serial reference implementations.
// The trailing argument of each parallel benchmark is the OpenMP thread count.
#include "graphflow/graph_complex.hpp"
#include "graphflow/orient.hpp"
#include "graphflow/parallel.hpp"

#include <benchmark/benchmark.h>

using namespace graphflow;

namespace {

GraphSum wheel_cocycle() { return find_cocycle("gamma5", default_data_dir()).sum; }

void BM_differential_serial(benchmark::State& state) {
  const GraphSum s = wheel_cocycle();
  for (auto _ : state) benchmark::DoNotOptimize(serial::differential(s));
}

void BM_differential_parallel(benchmark::State& state) {
  set_threads(static_cast<int>(state.range(0)));
  const GraphSum s = wheel_cocycle();
  for (auto _ : state) benchmark::DoNotOptimize(differential(s));
}

void BM_bracket_serial(benchmark::State& state) {
  const GraphSum a = wheel_cocycle(), b = gamma3().sum;
  for (auto _ : state) benchmark::DoNotOptimize(serial::lie_bracket(a, b));
}

void BM_bracket_parallel(benchmark::State& state) {
  set_threads(static_cast<int>(state.range(0)));
  const GraphSum a = wheel_cocycle(), b = gamma3().sum;
  for (auto _ : state) benchmark::DoNotOptimize(lie_bracket(a, b));
}

void BM_orient_flow_serial(benchmark::State& state) {
  const SuperPoly p = abstract_bivector(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::orient_flow(gamma3().sum, p));
}

void BM_orient_flow_parallel(benchmark::State& state) {
  set_threads(static_cast<int>(state.range(1)));
  const SuperPoly p = abstract_bivector(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orient_flow(gamma3().sum, p));
}

void BM_enumerate_bitmask(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::enumerate_graphs_bitmask(6, static_cast<int>(state.range(0))));
}

void BM_enumerate_parallel(benchmark::State& state) {
  set_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_graphs(6, static_cast<int>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_differential_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_differential_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bracket_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bracket_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_orient_flow_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_orient_flow_parallel)->Args({2, 1})->Args({3, 1})->Args({3, 2})->Args({3, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_bitmask)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_parallel)->Args({9, 1})->Args({9, 2})->Args({9, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
