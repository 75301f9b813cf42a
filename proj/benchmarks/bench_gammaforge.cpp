#include <benchmark/benchmark.h>

#include "gammaforge/bessel.hpp"
#include "gammaforge/gamma_const.hpp"
#include "gammaforge/quad.hpp"
#include "gammaforge/ramanujan.hpp"

using namespace gammaforge;

static void BM_GammaBrentMcMillan(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(euler::gamma_brent_mcmillan(2, digits));
}
BENCHMARK(BM_GammaBrentMcMillan)->Arg(100)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_GammaGlaisher(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(euler::gamma_glaisher(digits));
}
BENCHMARK(BM_GammaGlaisher)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_J0Series(benchmark::State& state) {
  BigReal x(state.range(0), 60);
  for (auto _ : state) benchmark::DoNotOptimize(bessel::bessel_j0_series(x, 40));
}
BENCHMARK(BM_J0Series)->Arg(5)->Arg(30)->Arg(100);

static void BM_SeriesS2(benchmark::State& state) {
  BigReal x(state.range(0), 60);
  for (auto _ : state) benchmark::DoNotOptimize(ramanujan::series_S_n({2, x, 30}));
}
BENCHMARK(BM_SeriesS2)->Arg(2)->Arg(10)->Arg(40);

static void BM_TanhSinh(benchmark::State& state) {
  const int digits = static_cast<int>(state.range(0));
  quad::Integrand f{[](const BigReal& t, int) { return exp(-t * t) * cos(t); }, {}};
  BigReal a(0L, digits + 10), b(3L, digits + 10);
  for (auto _ : state) benchmark::DoNotOptimize(quad::integrate_finite(f, a, b, digits));
}
BENCHMARK(BM_TanhSinh)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
