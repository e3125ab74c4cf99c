#include <benchmark/benchmark.h>

#include "qconf/confluence.hpp"
#include "qconf/convergence.hpp"

using namespace qconf;

namespace {

void BM_TransformedEqAt(benchmark::State& state) {
  const ComplexAP q = q_at(ComplexAP(Rational(1, 2), 256), 1e-3);
  const std::vector<Rational> lambda{Rational(0), Rational(1, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(transformed_eq_at(1, static_cast<int>(state.range(0)), q, Rational(1), lambda));
}
BENCHMARK(BM_TransformedEqAt)->Arg(3)->Arg(6);

void BM_TransformedNonEqAt(benchmark::State& state) {
  const ComplexAP q = q_at(ComplexAP(Rational(1, 2), 256), 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(transformed_noneq_at(static_cast<int>(state.range(0)), 3, q, Rational(1)));
}
BENCHMARK(BM_TransformedNonEqAt)->Arg(1)->Arg(2);

void BM_MainTheoremNonEq(benchmark::State& state) {
  MainTheoremParams p;
  p.variant = Variant::NonEq;
  p.N = 2;
  p.q0 = ComplexAP(Rational(1, 2), 256);
  p.ts = {1e-1, 1e-2, 1e-3, 1e-4};
  for (auto _ : state) benchmark::DoNotOptimize(main_theorem_report(p));
}
BENCHMARK(BM_MainTheoremNonEq)->Unit(benchmark::kMillisecond);

}  // namespace
