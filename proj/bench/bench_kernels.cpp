// Parallel kernels against their serial references.

#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "goldgen/dynamics.hpp"
#include "goldgen/permgen.hpp"

namespace {

using namespace goldgen;

MonicPoly bench_seed(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVec y(n);
  for (auto& c : y) c = {u(rng), u(rng)};
  return MonicPoly(y);
}

void BM_tree_parallel(benchmark::State& st) {
  const auto seed = bench_seed(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(generation_tree(seed, static_cast<std::size_t>(st.range(1))));
}

void BM_tree_serial(benchmark::State& st) {
  const auto seed = bench_seed(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(generation_tree_serial(seed, static_cast<std::size_t>(st.range(1))));
}

std::vector<PhaseState> bench_starts(std::size_t count) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PhaseState> s;
  for (std::size_t k = 0; k < count; ++k) {
    PhaseState p{{{-1.0, 0.0}, {0.2, 0.9}, {0.8, -0.7}}, CVec(3), 0.0};
    for (auto& v : p.v) v = {0.3 * u(rng), 0.3 * u(rng)};
    s.push_back(p);
  }
  return s;
}

const ModelSpec kIso{{SeedKind::iso_goldfish, 1.0}, 0, {}};

void BM_integrate_many_parallel(benchmark::State& st) {
  const auto starts = bench_starts(static_cast<std::size_t>(st.range(0)));
  const auto grid = uniform_grid(0.0, 2.0 * std::numbers::pi, 0.05);
  for (auto _ : st) benchmark::DoNotOptimize(integrate_many(kIso, starts, grid));
}

void BM_integrate_many_serial(benchmark::State& st) {
  const auto starts = bench_starts(static_cast<std::size_t>(st.range(0)));
  const auto grid = uniform_grid(0.0, 2.0 * std::numbers::pi, 0.05);
  for (auto _ : st) benchmark::DoNotOptimize(integrate_many_serial(kIso, starts, grid));
}

}  // namespace

BENCHMARK(BM_tree_parallel)->Args({3, 3})->Args({4, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tree_serial)->Args({3, 3})->Args({4, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_integrate_many_parallel)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_integrate_many_serial)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
