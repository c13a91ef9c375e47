#include <benchmark/benchmark.h>

#include <random>

#include "iostab/catalogue.hpp"
#include "iostab/stability.hpp"

namespace {

using namespace iostab;

void BM_SimulateTransport(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const DiscreteSystemNode sys = transport_boundary_control(m);
    const TimeGrid grid(sys.dt, 2 * m);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd vals(1, grid.n_steps);
    for (int k = 0; k < grid.n_steps; ++k) vals(0, k) = dist(rng);
    const Signal u(grid, sys.input_space, vals);
    for (auto _ : state) {
        auto res = simulate(sys, u);
        benchmark::DoNotOptimize(res.output.values.data());
    }
    state.SetComplexityN(m);
}
BENCHMARK(BM_SimulateTransport)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_CounterexampleSweep(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto rows = counterexample_sweep(m, {1.0, 0.25, 0.0625});
        benchmark::DoNotOptimize(rows.data());
    }
}
BENCHMARK(BM_CounterexampleSweep)->Arg(256)->Arg(1024);

void BM_ConvolveKernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double dt = 0.01;
    const MatrixMeasure h = catalogue_kernel("diag-exp-2", dt, 2.0);
    const TimeGrid grid(dt, n);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd vals(2, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < 2; ++i) vals(i, k) = dist(rng);
    const Signal u(grid, ValueSpace::sup(2), vals);
    for (auto _ : state) {
        auto y = convolve(h, u);
        benchmark::DoNotOptimize(y.values.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_ConvolveKernel)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_KernelGain(benchmark::State& state) {
    const DiscreteSystemNode sys = catalogue_system("diag-exp-2", 64);
    for (auto _ : state) {
        auto r = kernel_gain(sys, GainP::Inf, 10.0);
        benchmark::DoNotOptimize(r.lower_bound);
    }
}
BENCHMARK(BM_KernelGain);

void BM_EmpiricalGainLeftShift(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const DiscreteSystemNode sys = left_shift_distributed_input(m);
    for (auto _ : state) {
        auto r = empirical_gain(sys, GainP::Inf, 2.0, ProbeStrategy::SlidingBand);
        benchmark::DoNotOptimize(r.lower_bound);
    }
}
BENCHMARK(BM_EmpiricalGainLeftShift)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
