#include <benchmark/benchmark.h>

#include "dioph/arith.hpp"

static void BM_ArithTable(benchmark::State& state) {
  for (auto _ : state) {
    const dioph::ArithTable t = dioph::build_arith_table(state.range(0));
    benchmark::DoNotOptimize(t.is_prime(2));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ArithTable)->RangeMultiplier(10)->Range(10000, 10000000)->Complexity();
