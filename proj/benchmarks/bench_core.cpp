#include <benchmark/benchmark.h>

#include <numbers>

#include "shearlab/functionals.hpp"
#include "shearlab/ratelab.hpp"
#include "shearlab/spectral.hpp"

using namespace shearlab;

static void FbmSample(benchmark::State& state) {
    Grid1D g(static_cast<std::size_t>(state.range(0)), Domain::Interval);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto u = sample_fbm(0.5, g, {seed++, 0});
        benchmark::DoNotOptimize(u.values().data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(FbmSample)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void ViscousStep(benchmark::State& state) {
    Grid1D g = Grid1D::torus(static_cast<std::size_t>(state.range(0)));
    auto u = weierstrass(0.5, 2, 8, g);
    auto g0 = ComplexField::mode(g, 1);
    EvolveOptions opts;
    opts.dt = 0.05;
    for (auto _ : state) {
        auto res = viscous_evolve(u, g0, 1, 1e-3, {1.0}, opts);  // 20 splitting steps
        benchmark::DoNotOptimize(res.curve.ordinates.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ViscousStep)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void OscScan(benchmark::State& state) {
    auto u = sample_fbm(0.5, Grid1D::interval(static_cast<std::size_t>(state.range(0))),
                        {7, 0});
    auto xi_grid = make_xi_grid(1.0, 8.0, 16);  // resolved at the smallest grid
    for (auto _ : state) {
        auto est = rho_irregularity_norm(u, 0.55, 0.9, xi_grid, 6);
        benchmark::DoNotOptimize(est.value);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(OscScan)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

static void GammaWei(benchmark::State& state) {
    auto u = sample_fbm(0.5, Grid1D::interval(static_cast<std::size_t>(state.range(0))),
                        {9, 0});
    GammaWeiOptions opts;
    opts.delta_levels = 5;
    for (auto _ : state) {
        auto est = gamma_wei(u, 0.6, opts);
        benchmark::DoNotOptimize(est.value);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(GammaWei)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

BENCHMARK_MAIN();
