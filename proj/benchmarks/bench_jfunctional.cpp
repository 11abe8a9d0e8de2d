#include <benchmark/benchmark.h>

#include <cmath>

#include "displab/data_gen.hpp"
#include "displab/jfunctional.hpp"

using namespace displab;

static void BM_MinJ(benchmark::State& state) {
    const JProblem P(make_rough_profile(0.25, 0.05), std::ldexp(1.0, -static_cast<int>(state.range(0))), 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(min_J(P));
}
BENCHMARK(BM_MinJ)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);
