#include <benchmark/benchmark.h>

#include "dioph/counting.hpp"

namespace {

dioph::ApproxConfig golden() {
  dioph::ApproxConfig cfg;
  cfg.c = dioph::CVector::make({dioph::FixedReal::named_constant("phi")}, 1);
  cfg.epsilon = 0.1;
  cfg.A = dioph::FixedReal::from_int(1);
  cfg.B = dioph::FixedReal::from_int(2);
  cfg.validate();
  return cfg;
}

}  // namespace

static void BM_CountFN(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const dioph::ApproxConfig cfg = golden();
  const dioph::ArithTable table = dioph::build_arith_table(2 * N + 2);
  const dioph::FixedReal alpha = dioph::FixedReal::named_constant("sqrt3");
  for (auto _ : state) benchmark::DoNotOptimize(dioph::count_FN(alpha, cfg, N, table).count);
  state.SetComplexityN(N);
}
BENCHMARK(BM_CountFN)->RangeMultiplier(4)->Range(1 << 12, 1 << 20)->Complexity();

static void BM_IntegralExact(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const auto method = static_cast<dioph::IntegralMethod>(state.range(1));
  const dioph::ApproxConfig cfg = golden();
  const dioph::ArithTable table = dioph::build_arith_table(2 * N + 2);
  const dioph::FixedReal a = dioph::FixedReal::from_int(1), b = dioph::FixedReal::from_int(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dioph::integral_FN_exact(a, b, cfg, N, table, method).value());
  }
}
BENCHMARK(BM_IntegralExact)
    ->ArgsProduct({{1 << 12, 1 << 14, 1 << 16},
                   {static_cast<int>(dioph::IntegralMethod::direct),
                    static_cast<int>(dioph::IntegralMethod::sweep)}})
    ->Unit(benchmark::kMillisecond);
