#include <benchmark/benchmark.h>

#include "displab/data_gen.hpp"
#include "displab/projectors.hpp"
#include "displab/propagators.hpp"

using namespace displab;

static void BM_LinearEvolve(benchmark::State& state) {
    const GridSpec g(0.01, static_cast<std::size_t>(state.range(0)));
    const LinearPropagator P(SchemeSymbol::hyperviscous(g.h(), 2), g);
    const FieldState u = project_Th(make_gaussian(1.0), g);
    double t = 0.0;
    for (auto _ : state) benchmark::DoNotOptimize(P.evolve(u, t += 1e-3));
}
BENCHMARK(BM_LinearEvolve)->RangeMultiplier(4)->Range(1024, 65536);

// 100 Strang steps of the cubic NSE.
static void BM_NseSteps(benchmark::State& state) {
    const GridSpec g(0.025, static_cast<std::size_t>(state.range(0)));
    const FieldState u = project_Th(make_gaussian(1.0), g);
    const NseProblem prob(SchemeSymbol::fd3(g.h()), u, 2.0, 0.1, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_nse(prob));
}
BENCHMARK(BM_NseSteps)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_TwoGridNseSteps(benchmark::State& state) {
    const GridSpec g(0.025, 1024);
    const TwoGridPair pr(g);
    const FieldState u = twogrid_interpolate(project_Th(make_gaussian(1.0), pr.coarse), g);
    const NseProblem prob(SchemeSymbol::twogrid(g.h()), u, 2.0, 0.1, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_nse_twogrid(prob, RestartSchedule{0.05, 1.0}));
}
BENCHMARK(BM_TwoGridNseSteps)->Unit(benchmark::kMillisecond);
