#include <benchmark/benchmark.h>

#include <cmath>

#include "radnorm/dsl.hpp"
#include "radnorm/kernels.hpp"
#include "radnorm/norms.hpp"
#include "radnorm/operators.hpp"
#include "radnorm/quadrature.hpp"
#include "radnorm/schedule.hpp"

using namespace radnorm;

static void BM_Integrate1dSmooth(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_1d([](double t) { return std::exp(-t) * std::cos(5 * t); }, 0.0, 10.0));
  }
}
BENCHMARK(BM_Integrate1dSmooth);

static void BM_Integrate1dNearPole(benchmark::State& state) {
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  QuadratureHints hints;
  hints.poles.push_back({0.0, eps, false});
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_1d([eps](double t) { return 1.0 / (t * t + eps * eps); }, 0.0, 1.0, {}, hints));
  }
}
BENCHMARK(BM_Integrate1dNearPole)->Arg(3)->Arg(8)->Arg(14);

static void BM_KernelNorm(benchmark::State& state) {
  const double gap = std::pow(10.0, -static_cast<double>(state.range(0)));
  const DiscFunction k = test_kernel({1.0 - gap, 2.0});
  const ExponentPair e(4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rm_norm(k, e));
    benchmark::DoNotOptimize(mixed_norm(k, e));
  }
}
BENCHMARK(BM_KernelNorm)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_PieceNorm(benchmark::State& state) {
  const ExponentPair e(2, 1.25);
  const CounterexampleSchedule s = build_schedule(e, 5);
  const Pieces pc = pieces(s, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rm_norm(pc.f, e));
    benchmark::DoNotOptimize(rm_norm(pc.g, e));
  }
}
BENCHMARK(BM_PieceNorm)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_Projection(benchmark::State& state) {
  const DiscFunction f = power_series({1.0, 0.5, 0.25, 0.125});
  for (auto _ : state) {
    benchmark::DoNotOptimize(bergman_project(ProjectionParams(0.5), f, std::complex<double>(0.6, 0.3)));
  }
}
BENCHMARK(BM_Projection)->Unit(benchmark::kMillisecond);

static void BM_Parse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsl::compile("3 z^7 - 2 (z + 1) + U(0.001; 2, 1.25; 0.5) - 0.25 K(0.99, 1.75)"));
  }
}
BENCHMARK(BM_Parse);
BENCHMARK_MAIN();
