#include <benchmark/benchmark.h>

#include "layerchain/assembly.hpp"
#include "layerchain/intralayer.hpp"
#include "layerchain/model.hpp"
#include "layerchain/modes.hpp"
#include "layerchain/oracle.hpp"
#include "layerchain/specfun.hpp"

using namespace layerchain;

static void BM_normal_modes(benchmark::State& state) {
    const SystemSpec spec =
        nearest_neighbor_chain(static_cast<int>(state.range(0)), 2, 1, 9.0);
    for (auto _ : state) {
        const NormalModeSet modes = normal_modes(build_interlayer_form(spec));
        benchmark::DoNotOptimize(modes.frequencies.back());
    }
}
BENCHMARK(BM_normal_modes)->Arg(16)->Arg(64);

static void BM_delta1d_ground_root(benchmark::State& state) {
    for (auto _ : state) {
        const IntraLevel level = delta1d_levels(1.0, 1)[0];
        benchmark::DoNotOptimize(level.quantum_number);
    }
}
BENCHMARK(BM_delta1d_ground_root);

static void BM_tricomi_u(benchmark::State& state) {
    double a = -0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::tricomi_u(a, 0.5, 2.7).value);
        a = a < -3.0 ? -0.3 : a - 1e-4;  // keep the argument moving
    }
}
BENCHMARK(BM_tricomi_u);

static void BM_msr_quadrature(benchmark::State& state) {
    const IntraLevel level = delta1d_levels(1.0, 1)[0];
    for (auto _ : state)
        benchmark::DoNotOptimize(delta_msr_routes(level, 1.0).quadrature);
}
BENCHMARK(BM_msr_quadrature);

static void BM_grid_delta1d(benchmark::State& state) {
    for (auto _ : state) {
        const GridSolution sol = grid_delta1d(1.0, 1, 1024);
        benchmark::DoNotOptimize(sol.lowest_energies[0]);
    }
}
BENCHMARK(BM_grid_delta1d);

static void BM_full_hessian(benchmark::State& state) {
    const SystemSpec spec = nearest_neighbor_chain(4, 2, 1, 9.0);
    for (auto _ : state) {
        const FullHessianResult full = full_hessian_spectrum(spec);
        benchmark::DoNotOptimize(full.coupling_residual);
    }
}
BENCHMARK(BM_full_hessian);

static void BM_separation_curve(benchmark::State& state) {
    for (auto _ : state) {
        const SeparationCurve c =
            separation_curve(12, 1, IntraPotential::inverse_square(1.0), 0.0, 9.0, 1);
        benchmark::DoNotOptimize(c.points.back().de_per_layer);
    }
}
BENCHMARK(BM_separation_curve);

BENCHMARK_MAIN();
