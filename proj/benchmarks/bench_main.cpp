#include <benchmark/benchmark.h>

#include "tapmeans/catalog.hpp"
#include "tapmeans/kfunctional.hpp"
#include "tapmeans/moduli.hpp"
#include "tapmeans/operators.hpp"

using namespace tapmeans;

namespace {

void BM_Synthesize(benchmark::State& state) {
  const auto f = make_weierstrass(0.5, static_cast<int>(state.range(0))).series;
  const std::size_t N = default_grid_points(f.degree());
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(f, N));
}
BENCHMARK(BM_Synthesize)->DenseRange(6, 12, 2);

void BM_TaylorAbelPoisson(benchmark::State& state) {
  const auto f = make_weierstrass(0.5, 12).series;
  const SmoothingParams params(0.99, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(taylor_abel_poisson(f, params));
}
BENCHMARK(BM_TaylorAbelPoisson)->Arg(1)->Arg(3)->Arg(5);

void BM_SupNormRefined(benchmark::State& state) {
  const auto f = approximation_defect(make_weierstrass(0.5, 12).series, SmoothingParams(0.99, 2));
  for (auto _ : state) benchmark::DoNotOptimize(norm(f, kInfinity));
}
BENCHMARK(BM_SupNormRefined)->Unit(benchmark::kMillisecond);

void BM_KUpperMinimize(benchmark::State& state) {
  const auto f = make_random_trig_poly(10, 7).series;
  const double p = state.range(0) == 0 ? kInfinity : static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(k_upper_minimize(f, 0.1, 1, p));
}
BENCHMARK(BM_KUpperMinimize)->Arg(1)->Arg(2)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_CheckZ(benchmark::State& state) {
  const auto w = ModulusFunction::power_log(0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(check_Z(w));
}
BENCHMARK(BM_CheckZ)->Unit(benchmark::kMillisecond);

void BM_CheckZn(benchmark::State& state) {
  const auto w = ModulusFunction::power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(check_Zn(w, 2));
}
BENCHMARK(BM_CheckZn)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
