#include <brp/envelope.hpp>
#include <brp/models.hpp>
#include <brp/riemann.hpp>
#include <brp/viscous.hpp>
#include <brp/waves.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace brp;

namespace {

State v1(double a) {
  State u(1);
  u << a;
  return u;
}
State v2(double a, double b) {
  State u(2);
  u << a, b;
  return u;
}

void BM_ConvexEnvelope(benchmark::State& st) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  SampledFunction f;
  const auto m = static_cast<int>(st.range(0));
  double y = 0;
  for (int i = 0; i < m; ++i) {
    f.grid.push_back(i);
    f.values.push_back(y += g(rng));
  }
  for (auto _ : st) benchmark::DoNotOptimize(convex_envelope(f));
  st.SetComplexityN(m);
}
BENCHMARK(BM_ConvexEnvelope)->RangeMultiplier(8)->Range(64, 1 << 15)->Complexity(benchmark::oN);

void BM_WaveFanCurve(benchmark::State& st) {
  const auto ps = models::p_system();
  const double s = st.range(0) / 100.0;
  for (auto _ : st) benchmark::DoNotOptimize(wave_fan_curve(ps, v2(1, 0), 1, s));
}
BENCHMARK(BM_WaveFanCurve)->Arg(-20)->Arg(-5)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CubicWaveFanCurve(benchmark::State& st) {
  const auto cu = models::cubic();
  for (auto _ : st) benchmark::DoNotOptimize(wave_fan_curve(cu, v1(1.0), 1, -2.0));
}
BENCHMARK(BM_CubicWaveFanCurve)->Unit(benchmark::kMillisecond);

void BM_SolveRiemannPSystem(benchmark::State& st) {
  const auto ps = models::p_system();
  for (auto _ : st) benchmark::DoNotOptimize(solve_riemann(ps, v2(1, 0), v2(1.05, 0.02)));
}
BENCHMARK(BM_SolveRiemannPSystem)->Unit(benchmark::kMillisecond);

void BM_SolveBoundaryRiemannPSystem(benchmark::State& st) {
  const auto ps = models::p_system();
  for (auto _ : st) benchmark::DoNotOptimize(solve_boundary_riemann(ps, v2(1, 0), v2(1.03, -0.04)));
}
BENCHMARK(BM_SolveBoundaryRiemannPSystem)->Unit(benchmark::kMillisecond);

void BM_ClassicalMarch(benchmark::State& st) {
  const auto ps = models::p_system();
  GridConfig cfg;
  cfg.T = 0.25;
  const double eps = st.range(0) / 1000.0;
  for (auto _ : st) benchmark::DoNotOptimize(simulate_classical(ps, v2(1, 0), v2(1.03, -0.04), eps, cfg));
}
BENCHMARK(BM_ClassicalMarch)->Arg(80)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SelfSimilarBvp(benchmark::State& st) {
  const auto ps = models::p_system();
  const double eps = st.range(0) / 1000.0;
  for (auto _ : st) benchmark::DoNotOptimize(simulate_selfsimilar(ps, v2(1, 0), v2(1.03, -0.04), eps));
}
BENCHMARK(BM_SelfSimilarBvp)->Arg(80)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
