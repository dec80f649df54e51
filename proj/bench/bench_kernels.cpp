// Optimized kernels against the naive reference versions used by the tests.
#include <benchmark/benchmark.h>

#include <cmath>

#include "apgap/bv.hpp"
#include "apgap/combinatorics.hpp"
#include "apgap/maynard.hpp"
#include "apgap/reference.hpp"
#include "apgap/sieve.hpp"

using namespace apgap;

static void BM_psi_kernel(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chebyshev_psi(x, 7, 3));
}
BENCHMARK(BM_psi_kernel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_psi_reference(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::psi(x, 7, 3));
}
BENCHMARK(BM_psi_reference)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_E_b_kernel(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_E_b(x, 3, 0.2).value);
}
BENCHMARK(BM_E_b_kernel)->Arg(30000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_E_b_reference(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::E_b(x, 3, 0.2).value);
}
BENCHMARK(BM_E_b_reference)->Arg(30000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_bdh_kernel(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bdh_variance(x, 3, x / std::log(x) / 10).value);
}
BENCHMARK(BM_bdh_kernel)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_bdh_reference(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::bdh_variance(x, 3, x / std::log(x) / 10).value);
}
BENCHMARK(BM_bdh_reference)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_comb_exhaustive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_comblem(static_cast<i64>(state.range(0))).checked);
}
BENCHMARK(BM_comb_exhaustive)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_certificate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mk_lower_bound(static_cast<unsigned>(state.range(0)), 4).lambda);
}
BENCHMARK(BM_certificate)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
