#include <benchmark/benchmark.h>

#include <random>

#include "entsep/density.hpp"
#include "entsep/measures.hpp"
#include "entsep/separability.hpp"

namespace {

using namespace entsep;

AmplitudeTensor haar_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(std::size_t{1} << n);
  double sq = 0.0;
  for (auto& z : v) {
    z = {g(rng), g(rng)};
    sq += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(sq);
  return AmplitudeTensor(std::vector<std::size_t>(n, 2), std::move(v));
}

// n random single-qubit factors; every minor vanishes so no early exit.
AmplitudeTensor product_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  BlochAngles angles(n);
  for (auto& a : angles) a = {u(rng), u(rng)};
  return synthesize_product(angles);
}

void BM_MinorVerdictProduct(benchmark::State& state) {
  const auto t = product_state(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_separable_minors(t));
  state.counters["minors"] = static_cast<double>(all_minor_count(t));
}
BENCHMARK(BM_MinorVerdictProduct)->DenseRange(2, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_NonsingularCount(benchmark::State& state) {
  const auto t = haar_state(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(nonsingular_count(t));
}
BENCHMARK(BM_NonsingularCount)->DenseRange(2, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_StructureProduct(benchmark::State& state) {
  const auto t = product_state(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_structure(t));
}
BENCHMARK(BM_StructureProduct)->DenseRange(2, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_StructureEntangled(benchmark::State& state) {
  const auto t = haar_state(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_structure(t));
}
BENCHMARK(BM_StructureEntangled)->DenseRange(2, 10, 2)->Unit(benchmark::kMicrosecond);

void BM_NearestSeparable(benchmark::State& state) {
  const auto t = haar_state(static_cast<std::size_t>(state.range(0)), 5);
  SearchParams p;
  p.grid_resolution = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(nearest_separable(t, p));
}
BENCHMARK(BM_NearestSeparable)
    ->Args({2, 8})
    ->Args({3, 8})
    ->Args({3, 16})
    ->Args({4, 4})
    ->Unit(benchmark::kMillisecond);

void BM_RowRatio(benchmark::State& state) {
  const auto rho = density_from_state(haar_state(static_cast<std::size_t>(state.range(0)), 6));
  for (auto _ : state) benchmark::DoNotOptimize(row_ratio_conditions(rho));
}
BENCHMARK(BM_RowRatio)->DenseRange(2, 5, 1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
