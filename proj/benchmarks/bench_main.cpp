#include "kpdm/classical_sim.hpp"
#include "kpdm/kappa_core.hpp"
#include "kpdm/kappa_fourier.hpp"
#include "kpdm/osc_analytic.hpp"
#include "kpdm/spectral_solver.hpp"
#include "kpdm/well_analytic.hpp"

#include <benchmark/benchmark.h>

using namespace kpdm;

static void BM_kexp_klog(benchmark::State& state) {
    const DeformationParameter kappa(0.7);
    double u = 0.3;
    for (auto _ : state) {
        u = klog(kexp(u, kappa), kappa) + 1e-9;
        benchmark::DoNotOptimize(u);
    }
}
BENCHMARK(BM_kexp_klog);

static void BM_well_moments(benchmark::State& state) {
    const WellSpec w(1.0, DeformationParameter(3.0));
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(moments(w, n));
    }
}
BENCHMARK(BM_well_moments)->Arg(1)->Arg(10)->Arg(200);

static void BM_oscillator_eigenfunction(benchmark::State& state) {
    const auto s = OscillatorSpec::from_nu(static_cast<double>(state.range(0)));
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigenfunction(s, 3, x));
        x += 1e-6;
    }
}
BENCHMARK(BM_oscillator_eigenfunction)->Arg(10)->Arg(200);

static void BM_deformed_frame_solve(benchmark::State& state) {
    const MassProfile profile{1.0, DeformationParameter(1.0)};
    const auto pot = PotentialSpec::infinite_well(1.0);
    const auto grid = natural_grid(pot, profile, Frame::x_kappa, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_deformed_frame(pot, profile, grid, 5));
    }
}
BENCHMARK(BM_deformed_frame_solve)->Arg(401)->Arg(3201)->Unit(benchmark::kMillisecond);

static void BM_oscillator_orbit(benchmark::State& state) {
    const MassProfile profile{1.0, DeformationParameter(0.5)};
    const auto pot = PotentialSpec::ml_oscillator(1.0);
    const auto orbit = oscillator_orbit_from_amplitude(1.0, 1.0, profile);
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate(profile, pot, {0.0, 1.0, 0.0}, 1e-3, 10.0 * orbit.period(), {100, 1e6}));
    }
}
BENCHMARK(BM_oscillator_orbit)->Unit(benchmark::kMillisecond);

static void BM_sine_series(benchmark::State& state) {
    const WellSpec w(1.0, DeformationParameter(1.0));
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sine_series(w, [](double x) { return x * (1.0 - x); }, N));
    }
}
BENCHMARK(BM_sine_series)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
