#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "adhoc1d/exact.hpp"
#include "adhoc1d/monte_carlo.hpp"
#include "adhoc1d/network.hpp"

using namespace adhoc1d;

static void BM_QmFloat(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Ratio rho = Ratio::from_double(static_cast<double>(n) / 2 + 0.37);
    for (auto _ : state) benchmark::DoNotOptimize(q_m(ModelKind::Free, n, 2, rho, EvalMode::Float).value);
}
BENCHMARK(BM_QmFloat)->Arg(10)->Arg(50)->Arg(200)->Arg(1000);

static void BM_QmRational(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Ratio rho = Ratio::from_double(static_cast<double>(n) / 2 + 0.37);
    for (auto _ : state) benchmark::DoNotOptimize(q_m(ModelKind::Free, n, 2, rho, EvalMode::Rational).value);
}
BENCHMARK(BM_QmRational)->Arg(10)->Arg(50)->Arg(200);

static void BM_DistributionAuto(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Ratio rho = Ratio::from_double(0.75 * static_cast<double>(n));
    for (auto _ : state) benchmark::DoNotOptimize(distribution_values(ModelKind::Anchored, n, rho, EvalMode::Auto));
}
BENCHMARK(BM_DistributionAuto)->Arg(20)->Arg(200);

static void BM_CountComponents(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
    for (double& x : xs) x = u(rng);
    std::sort(xs.begin(), xs.end());
    for (auto _ : state) benchmark::DoNotOptimize(count_components(xs, 1.0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountComponents)->Arg(20)->Arg(1000);

static void BM_EstimateDistribution(benchmark::State& state) {
    const NetworkConfig config{20, 10.0, 1.0, 0.0};
    const auto trials = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_distribution(config, trials, 42, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateDistribution)->Arg(100000);

BENCHMARK_MAIN();
