#include <benchmark/benchmark.h>

#include "qconf/qseries.hpp"

using namespace qconf;

namespace {

TruncSeries<Rational> dense(int D, int seed) {
  std::vector<Rational> c;
  for (int d = 0; d <= D; ++d) c.push_back(Rational((d * 7 + seed) % 13 - 6, d % 5 + 1));
  return TruncSeries<Rational>(ExactContext{}, 0, std::move(c), D);
}

void BM_SeriesMultiply(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  const auto a = dense(D, 1), b = dense(D, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(D);
}
BENCHMARK(BM_SeriesMultiply)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_SeriesInvert(benchmark::State& state) {
  auto a = dense(static_cast<int>(state.range(0)), 3);
  a = a + TruncSeries<Rational>::constant(Rational(1), a.order());
  for (auto _ : state) benchmark::DoNotOptimize(series_invert(a));
}
BENCHMARK(BM_SeriesInvert)->Arg(16)->Arg(32);

void BM_RatFuncArithmetic(benchmark::State& state) {
  const RatFunc q = RatFunc::q(), L = RatFunc::Lambda(0);
  for (auto _ : state) {
    RatFunc acc(1);
    for (int r = 1; r <= state.range(0); ++r) acc = acc / (RatFunc(1) - q * L) + RatFunc(Rational(1, r));
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RatFuncArithmetic)->Arg(4)->Arg(8);

}  // namespace
