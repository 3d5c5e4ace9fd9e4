#include <benchmark/benchmark.h>

#include "statefiber/decide.hpp"
#include "statefiber/families.hpp"

using namespace statefiber;

namespace {

void BM_DecideTwoBridge(benchmark::State& state) {
  const auto g = two_bridge_graph(parse_cf("-3,4,-2,4,-2,2,5"));
  for (auto _ : state) benchmark::DoNotOptimize(decide_verdict(g));
}
BENCHMARK(BM_DecideTwoBridge);

void BM_DecideTheta(benchmark::State& state) {
  const auto g = theta_graph(parse_theta("AAAAA,BBBBB,AAAAA,BBBBB,AAAAA,BBBBB"));
  for (auto _ : state) benchmark::DoNotOptimize(decide_verdict(g));
}
BENCHMARK(BM_DecideTheta);

void BM_DecideLongCycle(benchmark::State& state) {
  std::vector<EdgeLabel> labels(static_cast<std::size_t>(state.range(0)), EdgeLabel::A);
  labels[0] = EdgeLabel::B;
  const auto g = cycle_graph(labels);
  for (auto _ : state) benchmark::DoNotOptimize(decide_verdict(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DecideLongCycle)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_DecideWithCertificate(benchmark::State& state) {
  const auto g = two_bridge_graph(parse_cf("3,-4,2,-4,2,-2,-3"));
  for (auto _ : state) benchmark::DoNotOptimize(decide(g));
}
BENCHMARK(BM_DecideWithCertificate);

}  // namespace
