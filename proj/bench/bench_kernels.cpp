// Serial reference kernels against the OpenMP and constant-work variants.

#include <benchmark/benchmark.h>

#include "chocbar/kernels.hpp"
#include "chocbar/verify.hpp"

namespace {

chocbar::Box box_for(const chocbar::FloorSlope& f, chocbar::Coord side) {
  return {side, f(side, side), side};
}

void BM_GrundySerial(benchmark::State& state) {
  const chocbar::FloorSlope f(3);
  const auto box = box_for(f, static_cast<chocbar::Coord>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chocbar::grundy_table_serial(f, box));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.volume()));
}

void BM_GrundyParallel(benchmark::State& state) {
  const chocbar::FloorSlope f(3);
  const auto box = box_for(f, static_cast<chocbar::Coord>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chocbar::grundy_table_parallel(f, box));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.volume()));
}

void BM_OutcomeNaive(benchmark::State& state) {
  const chocbar::FloorSlope f(3);
  const auto box = box_for(f, static_cast<chocbar::Coord>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chocbar::outcome_table_naive(f, box));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.volume()));
}

void BM_OutcomeRunningFlags(benchmark::State& state) {
  const chocbar::FloorSlope f(3);
  const auto box = box_for(f, static_cast<chocbar::Coord>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chocbar::outcome_table(f, box));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(box.volume()));
}

void BM_Sweep(benchmark::State& state) {
  chocbar::SweepSpec spec;
  spec.family = chocbar::ConjectureFamily::theorem(0);
  spec.x_max = spec.z_max = static_cast<chocbar::Coord>(state.range(0));
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(chocbar::sweep(spec, {chocbar::kDefaultBudget, parallel}));
}

}  // namespace

BENCHMARK(BM_GrundySerial)->Arg(20)->Arg(40);
BENCHMARK(BM_GrundyParallel)->Arg(20)->Arg(40);
BENCHMARK(BM_OutcomeNaive)->Arg(20)->Arg(40);
BENCHMARK(BM_OutcomeRunningFlags)->Arg(20)->Arg(40)->Arg(120);
BENCHMARK(BM_Sweep)->Args({40, 0})->Args({40, 1})->Args({120, 0})->Args({120, 1});

BENCHMARK_MAIN();
