#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ordcalc/harness.hpp"
#include "ordcalc/syntax.hpp"

using namespace ordcalc;

namespace {

harness::EnumBudget budget_for(SystemId s, std::size_t size) {
  harness::EnumBudget b;
  b.system = s;
  b.max_size = size;
  b.min_level = -2;
  b.max_subscript = 2;
  return b;
}

void BM_Enumerate(benchmark::State& state) {
  const auto s = static_cast<SystemId>(state.range(0));
  const auto size = static_cast<std::size_t>(state.range(1));
  std::size_t n = 0;
  for (auto _ : state) {
    auto terms = harness::enumerate(budget_for(s, size));
    n = terms.size();
    benchmark::DoNotOptimize(terms.data());
  }
  state.counters["terms"] = static_cast<double>(n);
}

// Random pairs from a fixed pool; Memoized mode keeps its cache across
// iterations unless the cold variant clears it.
void compare_pairs(benchmark::State& state, EvalMode mode, bool cold) {
  const auto s = static_cast<SystemId>(state.range(0));
  const auto pool = harness::enumerate(budget_for(s, 5));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs(4096);
  for (auto& p : pairs) p = {pick(rng), pick(rng)};
  for (auto _ : state) {
    if (cold) {
      state.PauseTiming();
      harness::clear_caches();
      state.ResumeTiming();
    }
    for (auto [i, j] : pairs) benchmark::DoNotOptimize(harness::compare(s, pool[i], pool[j], mode));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}

void BM_CompareWarm(benchmark::State& state) { compare_pairs(state, EvalMode::Memoized, false); }
void BM_CompareCold(benchmark::State& state) { compare_pairs(state, EvalMode::Memoized, true); }
void BM_CompareReference(benchmark::State& state) { compare_pairs(state, EvalMode::Reference, false); }

void BM_ParseRender(benchmark::State& state) {
  const auto s = static_cast<SystemId>(state.range(0));
  const auto pool = harness::enumerate(budget_for(s, 5));
  std::vector<std::string> texts;
  texts.reserve(pool.size());
  for (const auto& t : pool) texts.push_back(render(t));
  for (auto _ : state) {
    for (const auto& x : texts) benchmark::DoNotOptimize(parse(s, x));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(texts.size()));
}

constexpr int kB = static_cast<int>(SystemId::Buchholz);
constexpr int kP = static_cast<int>(SystemId::Poly);
constexpr int kX = static_cast<int>(SystemId::Xi);
constexpr int kM = static_cast<int>(SystemId::Mixed);

}  // namespace

BENCHMARK(BM_Enumerate)->Args({kB, 5})->Args({kP, 5})->Args({kX, 5})->Args({kM, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompareWarm)->Arg(kB)->Arg(kP)->Arg(kX)->Arg(kM);
BENCHMARK(BM_CompareCold)->Arg(kB)->Arg(kP)->Arg(kX)->Arg(kM);
BENCHMARK(BM_CompareReference)->Arg(kB)->Arg(kP)->Arg(kX)->Arg(kM);
BENCHMARK(BM_ParseRender)->Arg(kB)->Arg(kP)->Arg(kX)->Arg(kM);
BENCHMARK_MAIN();
