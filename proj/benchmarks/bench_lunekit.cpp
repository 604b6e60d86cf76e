#include <benchmark/benchmark.h>

#include "lunekit/domains.hpp"
#include "lunekit/lune.hpp"

using namespace lunekit;

namespace {

struct CellArg {
  double kappa;
  double lambda;
  double length;
};

const CellArg kCells[] = {{1, 1, 2.0}, {0, 1, 3.0}, {-1, 2, 1.5}, {-1, 1, 4.0}, {-1, 0.5, 4.0}};

void BM_Rho(benchmark::State& state) {
  const CellArg& c = kCells[state.range(0)];
  const Curvature K(c.kappa);
  double L = c.length;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho(K, c.lambda, L));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Rho)->DenseRange(0, 4);

void BM_BuildLune(benchmark::State& state) {
  const CellArg& c = kCells[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(build_lune(Curvature(c.kappa), c.lambda, c.length));
}
BENCHMARK(BM_BuildLune)->DenseRange(0, 4);

void BM_LuneInradiusNumeric(benchmark::State& state) {
  const CellArg& c = kCells[state.range(0)];
  const Lune lune = build_lune(Curvature(c.kappa), c.lambda, c.length);
  for (auto _ : state) benchmark::DoNotOptimize(lune_inradius_numeric(lune));
}
BENCHMARK(BM_LuneInradiusNumeric)->DenseRange(0, 4);

void BM_Generate(benchmark::State& state) {
  const CellArg& c = kCells[state.range(0)];
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_lambda_convex(Curvature(c.kappa), c.lambda, seed++, 4, 1e-3));
  }
}
BENCHMARK(BM_Generate)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_Inradius(benchmark::State& state) {
  const CellArg& c = kCells[state.range(0)];
  const ConvexPolyDomain d = generate_lambda_convex(Curvature(c.kappa), c.lambda, 7, 4, 1e-3);
  state.counters["vertices"] = static_cast<double>(d.size());
  for (auto _ : state) benchmark::DoNotOptimize(inradius(d));
}
BENCHMARK(BM_Inradius)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_Circumradius(benchmark::State& state) {
  const ConvexPolyDomain d = generate_lambda_convex(Curvature(0), 1, 7, 4, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(circumradius(d));
}
BENCHMARK(BM_Circumradius)->Unit(benchmark::kMillisecond);

void BM_IsLambdaConvex(benchmark::State& state) {
  const ConvexPolyDomain d = generate_lambda_convex(Curvature(-1), 0.5, 7, 4, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(is_lambda_convex(d, 0.5, 1e-9));
}
BENCHMARK(BM_IsLambdaConvex)->Unit(benchmark::kMillisecond);

void BM_BalancedChord(benchmark::State& state) {
  const ConvexPolyDomain d = generate_lambda_convex(Curvature(1), 1, 7, 4, 1e-3);
  const ModelPoint o = inradius(d).center;
  for (auto _ : state) benchmark::DoNotOptimize(balanced_chord(d, o));
}
BENCHMARK(BM_BalancedChord)->Unit(benchmark::kMillisecond);

void BM_RollingCheck(benchmark::State& state) {
  const ConvexPolyDomain d = generate_lambda_convex(Curvature(0), 1, 7, 4, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(rolling_check(d, 1.0, 200, 1e-2));
}
BENCHMARK(BM_RollingCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
