#include <benchmark/benchmark.h>

#include "scs/integration.hpp"
#include "scs/operators.hpp"
#include "scs/states.hpp"

using namespace scs;

static void BM_EnumerateFixedTotal(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto basis = enumerate_sector(fixed_total_spec(4, n));
        benchmark::DoNotOptimize(basis);
    }
}
BENCHMARK(BM_EnumerateFixedTotal)->Arg(8)->Arg(16)->Arg(24);

static void BM_Su3Generators(benchmark::State& state) {
    const auto basis = enumerate_sector(fixed_total_spec(3, static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto gens = su3_generators(basis);
        benchmark::DoNotOptimize(gens);
    }
}
BENCHMARK(BM_Su3Generators)->Arg(4)->Arg(8);

static void BM_HermitianExpm(benchmark::State& state) {
    const auto basis = enumerate_sector(fixed_total_spec(2, static_cast<int>(state.range(0))));
    const auto gens = su2_generators(basis);
    double t = 0.1;
    for (auto _ : state) {
        auto u = hermitian_expm(gens.generators[1], t);
        benchmark::DoNotOptimize(u);
        t += 0.1;
    }
}
BENCHMARK(BM_HermitianExpm)->Arg(32)->Arg(128);

static void BM_ChargeKet(benchmark::State& state) {
    const CoherentFamily family(enumerate_sector(su2_charge_spec(2, 12)),
                                CoherentFamily::Weight::charge);
    SphereSampler sampler(2, 7);
    const auto z = sampler.next();
    for (auto _ : state) {
        auto ket = family.ket(z.coords());
        benchmark::DoNotOptimize(ket);
    }
}
BENCHMARK(BM_ChargeKet);

static void BM_RoiGramSu2Charge(benchmark::State& state) {
    const FamilySpec family = SU2ChargeFamily{2, static_cast<int>(state.range(0))};
    const auto grid = sufficient_grid(family);
    for (auto _ : state) {
        auto gram = roi_matrix(family, grid);
        benchmark::DoNotOptimize(gram);
    }
}
BENCHMARK(BM_RoiGramSu2Charge)->Arg(8)->Arg(12);

static void BM_PolarGridSu3(benchmark::State& state) {
    for (auto _ : state) {
        auto grid = polar_grid(3, static_cast<int>(state.range(0)), 11);
        benchmark::DoNotOptimize(grid);
    }
}
BENCHMARK(BM_PolarGridSu3)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
