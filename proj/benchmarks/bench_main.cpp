#include <random>

#include <benchmark/benchmark.h>

#include "hdx/decomposition.hpp"
#include "hdx/eposet.hpp"
#include "hdx/expansion.hpp"
#include "hdx/grassmann.hpp"
#include "hdx/operators.hpp"

namespace {

void BM_UpperWalk(benchmark::State& state) {
  const auto X = hdx::complete_complex(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(hdx::upper_walk(X, 1));
}
BENCHMARK(BM_UpperWalk)->Arg(10)->Arg(20)->Arg(30);

void BM_GammaHdx(benchmark::State& state) {
  const auto X = hdx::complete_complex(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(hdx::gamma_hdx(X));
}
BENCHMARK(BM_GammaHdx)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
  const auto X = hdx::complete_complex(static_cast<int>(state.range(0)), 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> N;
  const hdx::LevelFunction f{2, Eigen::VectorXd::NullaryExpr(static_cast<Eigen::Index>(X.size(2)), [&] { return N(rng); })};
  const hdx::Decomposer dec(X, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dec.decompose(f));
}
BENCHMARK(BM_Decompose)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FitEposet(benchmark::State& state) {
  const auto G = hdx::grassmann_poset(2, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(hdx::fit_eposet(G));
}
BENCHMARK(BM_FitEposet)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
