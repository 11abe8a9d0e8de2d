#include <benchmark/benchmark.h>

#include <random>

#include "displab/fourier.hpp"

using namespace displab;

static void BM_ForwardInverse(benchmark::State& state) {
    const GridSpec g(0.01, static_cast<std::size_t>(state.range(0)));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    cvec v(g.n());
    for (auto& z : v) z = {nd(rng), nd(rng)};
    const FieldState u(g, v);
    for (auto _ : state) benchmark::DoNotOptimize(inverse_dft(forward_dft(u)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardInverse)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);
