#include <benchmark/benchmark.h>

#include "eisen/characters.hpp"
#include "eisen/gauss.hpp"
#include "eisen/lfunction.hpp"

using namespace eisen;

static void BM_SymbolOracle(benchmark::State& state) {
  auto list = enumerate_primary(state.range(0));
  for (auto _ : state) {
    for (std::size_t i = 1; i < list.size(); ++i) benchmark::DoNotOptimize(cubic_symbol(list[i - 1], list[i]));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(list.size() - 1));
}
BENCHMARK(BM_SymbolOracle)->Arg(500)->Arg(20'000);

static void BM_SymbolFast(benchmark::State& state) {
  auto list = enumerate_primary(state.range(0));
  for (auto _ : state) {
    for (std::size_t i = 1; i < list.size(); ++i) benchmark::DoNotOptimize(cubic_symbol_fast(list[i - 1], list[i]));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(list.size() - 1));
}
BENCHMARK(BM_SymbolFast)->Arg(500)->Arg(20'000);

static void BM_GaussSum(benchmark::State& state) {
  auto mods = enumerate_primary(state.range(0));
  const auto& n = mods.back();
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum(1, n));
}
BENCHMARK(BM_GaussSum)->Arg(1'000)->Arg(100'000);

static void BM_CentralValue(benchmark::State& state) {
  auto fam = enumerate_family(state.range(0));
  const auto& e = fam.back();
  Complex w = root_number(e);
  for (auto _ : state) benchmark::DoNotOptimize(afe_central_value(e, w));
}
BENCHMARK(BM_CentralValue)->Arg(1'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_EnumerateFamily(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_family(state.range(0)));
}
BENCHMARK(BM_EnumerateFamily)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
