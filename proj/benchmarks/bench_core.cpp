// bench_core — microbenchmarks for the hot paths: diagonalization, the two
// propagators, and the steady-state solvers
#include "uscraman/dynamics.hpp"
#include "uscraman/lindblad.hpp"
#include "uscraman/rabi.hpp"

#include <benchmark/benchmark.h>

using namespace uscraman;

namespace {

rabi::SystemParams bench_params(double lambda, double Omega_p, int n_max) {
    rabi::SystemParams p;
    p.lambda = lambda;
    p.Omega_p = Omega_p;
    const auto space = hilbert::build_space(n_max);
    const auto spec = rabi::rabi_spectrum(p, space);
    p.omega_p = spec.energies(0) - p.omega_b;
    p.omega_s = p.omega_p - 2.0;
    p.Omega_s = std::abs(spec.c(0, 0) / spec.c(0, 2)) * p.Omega_p;
    return p;
}

} // namespace

static void BM_RabiSpectrum(benchmark::State& state) {
    const auto space = hilbert::build_space(static_cast<int>(state.range(0)));
    rabi::SystemParams p;
    p.lambda = 0.6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rabi::rabi_spectrum(p, space));
    }
}
BENCHMARK(BM_RabiSpectrum)->Arg(20)->Arg(40);

static void BM_DressedBasis(benchmark::State& state) {
    const auto space = hilbert::build_space(20);
    rabi::SystemParams p;
    p.lambda = 0.6;
    const auto spec = rabi::rabi_spectrum(p, space);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rabi::h0_dressed_basis(p, space, spec));
    }
}
BENCHMARK(BM_DressedBasis);

// cost of advancing the closed system by one time unit (100 steps at dt = 0.01)
static void BM_EvolveUnitTime(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const auto space = hilbert::build_space(n_max);
    const auto p = bench_params(0.5, 0.8e-3, n_max);
    const auto psi0 = dynamics::basis_state(space, hilbert::Level::b, 0);
    dynamics::EvolveOptions opts;
    opts.sample_dt = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dynamics::evolve(psi0, p, space, 1.0, opts));
    }
}
BENCHMARK(BM_EvolveUnitTime)->Arg(12)->Arg(20);

static void BM_MasterUnitTime(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const auto space = hilbert::build_space(n_max);
    const auto p = bench_params(0.6, 8e-3, n_max);
    const lindblad::DampingRates rates{2e-3, 2e-3, 2e-3};
    const auto jumps = lindblad::build_jumps(p, space, rates);
    const auto rho0 = lindblad::ground_state_density(jumps);
    lindblad::MasterOptions opts;
    opts.sample_dt = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lindblad::master_evolve(rho0, p, space, rates, 1.0, opts));
    }
}
BENCHMARK(BM_MasterUnitTime)->Arg(8)->Arg(10);

static void BM_LambdaSteady(benchmark::State& state) {
    const auto space = hilbert::build_space(10);
    const auto p = bench_params(0.6, 2e-3, 10);
    const auto spec = rabi::rabi_spectrum(p, space);
    const lindblad::DampingRates rates{2e-3, 2e-3, 2e-3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(lindblad::lambda_liouvillian_steady(p, spec, rates));
    }
}
BENCHMARK(BM_LambdaSteady);

static void BM_AppendixResonantSS(benchmark::State& state) {
    const auto spec = rabi::rabi_spectrum(bench_params(0.6, 2e-3, 10), hilbert::build_space(10));
    const lindblad::DampingRates rates{2e-3, 2e-3, 2e-3};
    const auto g = lindblad::lambda_rates(spec, rates);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            lindblad::appendix_resonant_ss(9.4e-4, 9.4e-4, g));
    }
}
BENCHMARK(BM_AppendixResonantSS);

BENCHMARK_MAIN();
