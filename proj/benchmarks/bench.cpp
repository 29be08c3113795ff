#include <benchmark/benchmark.h>

#include "fermatcount/arith.hpp"
#include "fermatcount/bundle.hpp"
#include "fermatcount/counting.hpp"
#include "fermatcount/densities.hpp"
#include "fermatcount/sums.hpp"

using namespace fermat;

static void BM_count_N(benchmark::State& state) {
  i64 B = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(count_N(B).count);
}
BENCHMARK(BM_count_N)->Arg(50)->Arg(200);

static void BM_count_NX_direct(benchmark::State& state) {
  i64 B = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(count_NX_direct(B).count);
}
BENCHMARK(BM_count_NX_direct)->Arg(100)->Arg(1000);

static void BM_count_NX_fibration(benchmark::State& state) {
  i64 B = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(count_NX_fibration(B).count);
}
BENCHMARK(BM_count_NX_fibration)->Arg(10)->Arg(20);

static void BM_sigma_p_ramified(benchmark::State& state) {
  auto f = fibre(1, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_p(f, 2).value);
    benchmark::DoNotOptimize(sigma_p(f, 3).value);
    benchmark::DoNotOptimize(sigma_p(f, 13).value);
  }
}
BENCHMARK(BM_sigma_p_ramified);

static void BM_sigma_infinity(benchmark::State& state) {
  auto f = fibre(3, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(sigma_infinity_raw(f, 1e-2, state.range(0)));
}
BENCHMARK(BM_sigma_infinity)->Arg(1024)->Arg(8192);

static void BM_progression_sum(benchmark::State& state) {
  ProgressionQuery q{state.range(0), 7, 1, 1, false};
  for (auto _ : state) benchmark::DoNotOptimize(progression_sum(q).exact_int);
}
BENCHMARK(BM_progression_sum)->Arg(100000)->Arg(1000000);

static void BM_D_sum(benchmark::State& state) {
  i64 x = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(D_sum(x));
}
BENCHMARK(BM_D_sum)->Arg(256)->Arg(1024);

static void BM_kloosterman_sweep(benchmark::State& state) {
  i64 c = state.range(0);
  for (auto _ : state) {
    double acc = 0;
    for (i64 a = 1; a <= c; a++) acc += kloosterman(a, 1, c).value;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_kloosterman_sweep)->Arg(199)->Arg(512);

static void BM_count_bt(benchmark::State& state) {
  i64 B = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(count_bt(B).pairs);
}
BENCHMARK(BM_count_bt)->Arg(8)->Arg(64);

BENCHMARK_MAIN();
