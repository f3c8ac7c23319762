#include "latticeprop/latticeprop.hpp"

#include <benchmark/benchmark.h>

using namespace latticeprop;

static void BM_Triples(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(primitive_triples(s.range(0)));
}
BENCHMARK(BM_Triples)->Arg(1000)->Arg(100000);

static void BM_K1Histogram(benchmark::State& s) {
  int d = static_cast<int>(s.range(0));
  LatticePoint delta{std::vector<coord_t>(d, 1), s.range(1)};
  for (auto _ : s) benchmark::DoNotOptimize(k1_free_histogram(d, delta));
}
BENCHMARK(BM_K1Histogram)->Args({1, 40})->Args({2, 20})->Args({3, 12});

static void BM_KnHistogram(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(kn_free_histogram(static_cast<int>(s.range(0)), {{3}, s.range(1)}));
}
BENCHMARK(BM_KnHistogram)->Args({5, 20})->Args({13, 20})->Args({25, 30});

static void BM_PathCountRow(benchmark::State& s) {
  auto ax = axes_of_symmetry(1, 1);
  for (auto _ : s) benchmark::DoNotOptimize(path_count_row(Free{1, std::nullopt}, {{0}, 0}, s.range(0), ax));
}
BENCHMARK(BM_PathCountRow)->Arg(20)->Arg(200);

static void BM_ContMultinomial(benchmark::State& s) {
  std::vector<double> x(static_cast<std::size_t>(s.range(0)), 1.0);
  for (auto _ : s) benchmark::DoNotOptimize(cont_multinomial(x));
}
BENCHMARK(BM_ContMultinomial)->Arg(2)->Arg(3)->Arg(4);

static void BM_TaylorTable(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(taylor_table(3, static_cast<int>(s.range(0))));
}
BENCHMARK(BM_TaylorTable)->Arg(20)->Arg(60);

static void BM_ContProfile(benchmark::State& s) {
  std::vector<double> xs{-1.0, -0.5, 0.0, 0.5, 1.0};
  for (auto _ : s) benchmark::DoNotOptimize(k1_cont_profile(2.0, xs, 1.0));
}
BENCHMARK(BM_ContProfile)->Unit(benchmark::kMillisecond);

static void BM_InteractingProfile(benchmark::State& s) {
  for (auto _ : s)
    benchmark::DoNotOptimize(interacting_profile(static_cast<int>(s.range(0)), 2.0, 1.0, {1.0, 1.0}));
}
BENCHMARK(BM_InteractingProfile)->Arg(24)->Arg(96);

BENCHMARK_MAIN();
