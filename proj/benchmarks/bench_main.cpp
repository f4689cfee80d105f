#include <benchmark/benchmark.h>

#include "qdl/constants.hpp"
#include "qdl/discrepancy.hpp"
#include "qdl/halton.hpp"
#include "qdl/lambert_w.hpp"

namespace {

void BM_HaltonDirect(benchmark::State& state) {
  const auto bases = qdl::first_primes(8);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qdl::halton_points(bases, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * bases.dimension()));
}
BENCHMARK(BM_HaltonDirect)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_HaltonIncremental(benchmark::State& state) {
  const auto bases = qdl::first_primes(8);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qdl::halton_points_incremental(bases, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * bases.dimension()));
}
BENCHMARK(BM_HaltonIncremental)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_StarDiscrepancy(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto p = qdl::halton_points(qdl::first_primes(d), n);
  for (auto _ : state) benchmark::DoNotOptimize(qdl::star_discrepancy_exact(p).value);
  state.counters["nodes"] = qdl::star_grid_size(p);
}
BENCHMARK(BM_StarDiscrepancy)
    ->Args({2, 256})
    ->Args({2, 1024})
    ->Args({3, 128})
    ->Args({3, 512})
    ->Unit(benchmark::kMillisecond);

void BM_UnanchoredDiscrepancy(benchmark::State& state) {
  const auto p = qdl::halton_points(qdl::first_primes(2), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qdl::unanchored_discrepancy_exact(p).value);
}
BENCHMARK(BM_UnanchoredDiscrepancy)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LambertW(benchmark::State& state) {
  double z = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdl::lambert_w(z));
    z = z < 1e20 ? z * 1.7 : 1e-3;
  }
}
BENCHMARK(BM_LambertW);

void BM_CDeltaTable(benchmark::State& state) {
  for (auto _ : state) {
    for (const auto& cell : qdl::reference_c_delta_table()) {
      benchmark::DoNotOptimize(qdl::c_delta_table(cell.alpha, cell.delta).c_delta);
    }
  }
}
BENCHMARK(BM_CDeltaTable);

void BM_CDeltaHN(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qdl::c_delta_hn(1.5, 0.1).c_delta);
}
BENCHMARK(BM_CDeltaHN)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
