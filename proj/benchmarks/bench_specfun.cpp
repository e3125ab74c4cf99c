#include <benchmark/benchmark.h>

#include "qconf/specfun.hpp"

using namespace qconf;

namespace {

void BM_Theta(benchmark::State& state) {
  const long bits = state.range(0);
  const ComplexAP q(0.5, 0.1, bits), Q(2.0, 0.5, bits);
  for (auto _ : state) benchmark::DoNotOptimize(theta_eval(q, Q));
}
BENCHMARK(BM_Theta)->Arg(128)->Arg(256)->Arg(512);

void BM_QLog(benchmark::State& state) {
  const ComplexAP q(0.9, 0.0, 256), Q(2.0, 0.5, 256);
  for (auto _ : state) benchmark::DoNotOptimize(ell_q_eval(q, Q));
}
BENCHMARK(BM_QLog);

void BM_QPochhammerInf(benchmark::State& state) {
  const ComplexAP q(0.8, 0.0, 256), x(0.3, 0.2, 256);
  for (auto _ : state) benchmark::DoNotOptimize(qpochhammer_inf(x, q, 1e-60));
}
BENCHMARK(BM_QPochhammerInf);

}  // namespace
