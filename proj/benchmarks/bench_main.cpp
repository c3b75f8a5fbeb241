#include <benchmark/benchmark.h>

#include "motslab/mots.hpp"
#include "motslab/shear.hpp"
#include "motslab/transport.hpp"

using namespace motslab;

namespace {

const Regime& regime() {
  static const Regime r = make_regime(RegimeParameters{});
  return r;
}

void BM_Transform(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto g = make_grid(n, 2 * n);
  const auto f = random_smooth_field(g, n / 2, 7);
  for (auto _ : st) {
    auto c = g->analyze(f.values());
    benchmark::DoNotOptimize(g->synthesize(c));
  }
}
BENCHMARK(BM_Transform)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_Derivatives(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  auto g = make_grid(n, 2 * n);
  const auto f = random_smooth_field(g, n / 2, 7);
  for (auto _ : st) benchmark::DoNotOptimize(g->derivatives(f.values(), true));
}
BENCHMARK(BM_Derivatives)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_WindowSlice(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  static const ShearModel shear(regime(), ProfileSpec{});
  const auto& d = regime().derived;
  auto g = make_grid(n, 2 * n);
  const auto pb = make_problem(regime(), shear, g, 0.5 * (d.ubar_gamma + d.ubar_lambda), PerturbationOptions{});
  for (auto _ : st) benchmark::DoNotOptimize(solve_slice(pb, SolverOptions{}));
}
BENCHMARK(BM_WindowSlice)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ConstantSlice(benchmark::State& st) {
  auto g = make_grid(64, 128);
  const auto pb = make_constant_problem(g, 4 * regime().derived.m0);
  for (auto _ : st) benchmark::DoNotOptimize(solve_slice(pb, SolverOptions{}));
}
BENCHMARK(BM_ConstantSlice)->Unit(benchmark::kMillisecond);

void BM_DataCone(benchmark::State& st) {
  const auto p = build_profile(regime(), ProfileSpec{});
  const auto model = p.model();
  ConeOptions o;
  o.steps = static_cast<int>(st.range(0));
  o.store_every = 64;
  o.estimate_error = false;
  for (auto _ : st) benchmark::DoNotOptimize(integrate_data_cone(*model, p.grid, o, regime().derived.delta));
}
BENCHMARK(BM_DataCone)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
