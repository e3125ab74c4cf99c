#include <benchmark/benchmark.h>

#include "qconf/jfun.hpp"

using namespace qconf;

namespace {

void BM_JKNonEqRational(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0)), D = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_jk_noneq<Rational>(N, D, Rational(1, 3)));
}
BENCHMARK(BM_JKNonEqRational)->Args({1, 8})->Args({3, 8})->Args({3, 16});

void BM_JKNonEqSymbolic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_jk_noneq<RatFunc>(static_cast<int>(state.range(0)), 4, RatFunc::q()));
}
BENCHMARK(BM_JKNonEqSymbolic)->Arg(1)->Arg(2);

void BM_JCohEq(benchmark::State& state) {
  const std::vector<Rational> lambda{Rational(0), Rational(1, 3), Rational(17, 21), Rational(16, 55)};
  for (auto _ : state) benchmark::DoNotOptimize(build_jcoh_eq<Rational>(3, static_cast<int>(state.range(0)), Rational(1), lambda));
}
BENCHMARK(BM_JCohEq)->Arg(8)->Arg(16);

void BM_JKEqNumeric(benchmark::State& state) {
  const ComplexAP q(Rational(1, 2), 256), z(Rational(1), 256);
  const std::vector<ComplexAP> lambda{ComplexAP(Rational(0), 256), ComplexAP(Rational(1, 3), 256), ComplexAP(Rational(17, 21), 256)};
  for (auto _ : state) benchmark::DoNotOptimize(build_jk_eq_numeric(2, static_cast<int>(state.range(0)), q, z, lambda));
}
BENCHMARK(BM_JKEqNumeric)->Arg(4)->Arg(8);

}  // namespace
