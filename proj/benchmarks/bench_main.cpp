#include <benchmark/benchmark.h>

#include "chanres/csm.hpp"
#include "chanres/indist.hpp"
#include "chanres/restrictions.hpp"
#include "chanres/translate.hpp"
#include "common.hpp"
#include "generators.hpp"

namespace {

using namespace chanres;

// n independent request/reply pairs between P and n partners; P sends all
// requests before receiving any reply.
PrefixMsc fan_out(int n) {
  Word w;
  for (int i = 0; i < n; ++i) w.push_back(Event::send("P", "R" + std::to_string(i), "req"));
  for (int i = 0; i < n; ++i) {
    const std::string r = "R" + std::to_string(i);
    w.push_back(Event::receive("P", r, "req"));
    w.push_back(Event::send(r, "P", "rep"));
  }
  for (int i = 0; i < n; ++i) w.push_back(Event::receive("R" + std::to_string(i), "P", "rep"));
  return msc_of(w);
}

void BM_CountLinearizations(benchmark::State& state) {
  const auto m = fan_out(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_linearizations(m));
}
BENCHMARK(BM_CountLinearizations)->DenseRange(2, 6);

void BM_MinExistentialBound(benchmark::State& state) {
  const auto m = fan_out(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(min_existential_bound(m));
}
BENCHMARK(BM_MinExistentialBound)->DenseRange(2, 6);

void BM_MinSyncK(benchmark::State& state) {
  const auto m = fan_out(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(min_sync_k(m));
}
BENCHMARK(BM_MinSyncK)->DenseRange(2, 5);

void BM_Closure(benchmark::State& state) {
  Word w;
  for (int i = 0; i < state.range(0); ++i) {
    const std::string a = "A" + std::to_string(i);
    const std::string b = "B" + std::to_string(i);
    w.push_back(Event::send(a, b, "m"));
    w.push_back(Event::receive(a, b, "m"));
  }
  for (auto _ : state) benchmark::DoNotOptimize(closure({w}, w.size()));
}
BENCHMARK(BM_Closure)->DenseRange(2, 4);

void BM_TranslateAndVerify(benchmark::State& state) {
  const auto g = chanres::testing::fixture_type("h8.gt");
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_translation(g, len));
}
BENCHMARK(BM_TranslateAndVerify)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ClassifyCsm(benchmark::State& state) {
  const auto a = chanres::testing::fixture_csm("stream.csm");
  CsmBounds b;
  b.depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify_csm(a, b));
}
BENCHMARK(BM_ClassifyCsm)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
