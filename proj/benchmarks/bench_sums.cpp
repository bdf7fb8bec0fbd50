#include <benchmark/benchmark.h>

#include "dioph/fourier.hpp"
#include "dioph/vaughan.hpp"

static void BM_ExpSum(benchmark::State& state) {
  const dioph::Phase theta = dioph::phase_of(dioph::FixedReal::named_constant("sqrt2"));
  for (auto _ : state) benchmark::DoNotOptimize(dioph::exp_sum(1, state.range(0), theta));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExpSum)->Range(1 << 10, 1 << 20);

static void BM_LambdaExpSum(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const dioph::ArithTable table = dioph::build_arith_table(n);
  const dioph::PrimePowers terms = dioph::prime_powers_between(table, 1, n);
  const dioph::Phase theta = dioph::phase_of(dioph::FixedReal::named_constant("phi"));
  for (auto _ : state) benchmark::DoNotOptimize(dioph::lambda_exp_sum(terms, theta));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_LambdaExpSum)->Range(1 << 10, 1 << 20);

static void BM_VaalerEvaluate(benchmark::State& state) {
  const dioph::VaalerPolynomial poly(static_cast<int>(state.range(0)));
  const dioph::Phase x = dioph::phase_of(dioph::FixedReal::named_constant("sqrt3"));
  for (auto _ : state) benchmark::DoNotOptimize(poly.evaluate(x));
}
BENCHMARK(BM_VaalerEvaluate)->Arg(1)->Arg(10)->Arg(50)->Arg(200);
