#include <benchmark/benchmark.h>

#include <random>

#include "truecc/enumerate.hpp"
#include "truecc/equiv.hpp"
#include "truecc/fixtures.hpp"
#include "truecc/refinement.hpp"
#include "truecc/stc.hpp"
#include "truecc/translate.hpp"

using namespace truecc;
namespace fx = truecc::fixtures;

namespace {

void BM_EnumerateRootedConnected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(for_each_rooted_connected(n, [](const STStructure&) {}));
}
BENCHMARK(BM_EnumerateRootedConnected)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_AdjacentClosed(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<STStructure> sample;
  for (int k = 0; k < 64; ++k) sample.push_back(random_rooted_connected(static_cast<int>(state.range(0)), rng));
  for (auto _ : state)
    for (const auto& st : sample) benchmark::DoNotOptimize(is_adjacent_closed(st).holds);
}
BENCHMARK(BM_AdjacentClosed)->DenseRange(3, 6);

void BM_StIntoH(benchmark::State& state) {
  auto st = fx::full_st(numbered_events(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(stintoh(st).size());
}
BENCHMARK(BM_StIntoH)->DenseRange(2, 5);

void BM_HintoST(benchmark::State& state) {
  auto h = make_bulk(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hintost(h).size());
}
BENCHMARK(BM_HintoST)->DenseRange(2, 5);

void BM_StHHBisimulation(benchmark::State& state) {
  auto a = fx::asym_conflict_2(), b = fx::asym_conflict_3();
  for (auto _ : state) benchmark::DoNotOptimize(st_hh_bisimilar(a, b).holds);
}
BENCHMARK(BM_StHHBisimulation);

void BM_HistoryUnfolding(benchmark::State& state) {
  auto h = fx::cube_missing_face(true);
  for (auto _ : state) benchmark::DoNotOptimize(history_unfolding(h).size());
}
BENCHMARK(BM_HistoryUnfolding);

void BM_SculptureSearch(benchmark::State& state) {
  auto h = fx::demonic_hda();
  for (auto _ : state) benchmark::DoNotOptimize(is_sculpture(h).has_value());
}
BENCHMARK(BM_SculptureSearch)->Unit(benchmark::kMillisecond);

void BM_Refine(benchmark::State& state) {
  auto chain = parse_st("c d", "(,) (c,) (c,c) (cd,c) (cd,cd)");
  auto base = fx::full_st(numbered_events(static_cast<int>(state.range(0))));
  RefinementFunction r;
  for (const auto& e : base.events()) r[e.label] = chain;
  for (auto _ : state) benchmark::DoNotOptimize(refine(base, r).size());
}
BENCHMARK(BM_Refine)->DenseRange(1, 3);

void BM_ShutdownBackupChu(benchmark::State& state) {
  auto stc = gen_shutdown_backup(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chu4_decode(chu4_encode(stc)).size());
}
BENCHMARK(BM_ShutdownBackupChu)->DenseRange(1, 6);

}  // namespace

BENCHMARK_MAIN();
