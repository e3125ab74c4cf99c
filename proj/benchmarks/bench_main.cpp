#include <benchmark/benchmark.h>

// The packaged benchmark_main archive carries LTO bytecode from another
// compiler release, so main is provided here.
BENCHMARK_MAIN();
