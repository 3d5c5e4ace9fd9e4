#include <benchmark/benchmark.h>

#include <random>

#include "statefiber/fold.hpp"

using namespace statefiber;

namespace {

std::vector<FreeWord> random_words(std::int64_t letters, int gens, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> gen(1, gens), len(1, 40);
  std::vector<FreeWord> words;
  for (std::int64_t total = 0; total < letters;) {
    FreeWord w(len(rng));
    for (auto& l : w) l = {gen(rng), rng() & 1 ? 1 : -1};
    total += static_cast<std::int64_t>(w.size());
    words.push_back(std::move(w));
  }
  return words;
}

void BM_FoldRandomWords(benchmark::State& state) {
  const auto words = random_words(state.range(0), 50, 7);
  const auto gamma = build_gamma_from_words(words, 50);
  for (auto _ : state) benchmark::DoNotOptimize(fold(gamma, false));
  state.SetComplexityN(state.range(0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FoldRandomWords)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond)->Complexity();

void BM_FoldWithTrace(benchmark::State& state) {
  const auto words = random_words(state.range(0), 50, 11);
  const auto gamma = build_gamma_from_words(words, 50);
  for (auto _ : state) benchmark::DoNotOptimize(fold(gamma, true));
}
BENCHMARK(BM_FoldWithTrace)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
