#include "tcs/kernels.hpp"
#include "tcs/rng.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

namespace {

using namespace tcs;

struct Cloud {
    std::size_t n;
    std::size_t dim = 2;
    std::vector<double> x, v, weights, masses;

    explicit Cloud(std::size_t count) : n(count), x(2 * count), v(2 * count), weights(count * count), masses(count)
    {
        Rng rng(42);
        for (double& value : x)
            value = uniform(rng, -1, 1);
        for (double& value : v)
            value = uniform(rng, -1, 1);
        for (double& value : weights)
            value = uniform01(rng) / static_cast<double>(count);
        for (double& value : masses)
            value = 1.0 / static_cast<double>(count);
    }
};

template <auto Kernel>
void rank_table(benchmark::State& state)
{
    const Cloud c(static_cast<std::size_t>(state.range(0)));
    std::vector<std::uint32_t> out(c.n * c.n);
    for (auto _ : state) {
        Kernel(c.x, c.v, c.n, c.dim, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void consensus_rhs(benchmark::State& state)
{
    const Cloud c(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(c.n * c.dim);
    for (auto _ : state) {
        Kernel(c.weights, c.v, c.n, c.dim, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void swarm_acceleration(benchmark::State& state)
{
    const Cloud c(static_cast<std::size_t>(state.range(0)));
    const kernels::SwarmCoefficients coeff{1.0, 0.5, 1.0, 0.5};
    std::vector<double> out(c.n * c.dim);
    for (auto _ : state) {
        Kernel(c.x, c.v, c.weights, c.n, c.dim, coeff, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void mollified_separation(benchmark::State& state)
{
    const Cloud c(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(c.n * c.n);
    for (auto _ : state) {
        Kernel(c.x, c.masses, c.n, c.dim, 0.05, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void sharp_separation(benchmark::State& state)
{
    const Cloud c(static_cast<std::size_t>(state.range(0)));
    std::vector<double> out(c.n * c.n);
    for (auto _ : state) {
        Kernel(c.x, c.masses, c.n, c.dim, out);
        benchmark::DoNotOptimize(out.data());
    }
}

} // namespace

BENCHMARK(rank_table<kernels::serial::rank_table>)->Name("serial/rank_table")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(rank_table<kernels::parallel::rank_table>)->Name("parallel/rank_table")->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK(consensus_rhs<kernels::serial::consensus_rhs>)->Name("serial/consensus_rhs")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(consensus_rhs<kernels::parallel::consensus_rhs>)->Name("parallel/consensus_rhs")->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK(swarm_acceleration<kernels::serial::swarm_acceleration>)->Name("serial/swarm_acceleration")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(swarm_acceleration<kernels::parallel::swarm_acceleration>)->Name("parallel/swarm_acceleration")->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK(sharp_separation<kernels::serial::sharp_separation_table>)->Name("serial/sharp_separation")->RangeMultiplier(4)->Range(16, 256);
BENCHMARK(sharp_separation<kernels::parallel::sharp_separation_table>)->Name("parallel/sharp_separation")->RangeMultiplier(4)->Range(16, 256);

BENCHMARK(mollified_separation<kernels::serial::mollified_separation_table>)->Name("serial/mollified_separation")->RangeMultiplier(4)->Range(16, 256);
BENCHMARK(mollified_separation<kernels::parallel::mollified_separation_table>)->Name("parallel/mollified_separation")->RangeMultiplier(4)->Range(16, 256);
BENCHMARK_MAIN();
