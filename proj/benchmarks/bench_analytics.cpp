#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "folio/cvar.hpp"
#include "folio/riskmetrics.hpp"
#include "folio/synthetic.hpp"
#include "folio/tailrisk.hpp"

using namespace folio;

namespace {

Eigen::VectorXd heavy_series(Eigen::Index n, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.double_pareto(2.5, 0.01);
    return x;
}

void BM_empirical_cvar(benchmark::State& state) {
    const Eigen::VectorXd losses = heavy_series(state.range(0), 11);
    for (auto _ : state) benchmark::DoNotOptimize(empirical_var_cvar(losses, 0.95));
}
BENCHMARK(BM_empirical_cvar)->Arg(252)->Arg(5000);

void BM_hill_curve(benchmark::State& state) {
    const Eigen::VectorXd returns = heavy_series(state.range(0), 12);
    const auto range = default_k_range(state.range(0) / 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(hill_curve(returns, TailSide::lower, range, 0.95));
}
BENCHMARK(BM_hill_curve)->Arg(1200)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_ratio_distribution(benchmark::State& state) {
    Rng rng(13);
    BacktestResult result;
    const Eigen::Index t = 1500;
    result.excess_returns.resize(t);
    for (Eigen::Index i = 0; i < t; ++i) result.excess_returns[i] = 1e-4 + 0.008 * rng.normal();
    result.wealth.dates = business_dates("2019-01-01", t);
    result.wealth.wealth = Eigen::VectorXd::Ones(t);

    RollingRatioSpec spec;
    spec.metric = RatioMetric::starr;
    spec.alpha = 0.05;
    for (auto _ : state) benchmark::DoNotOptimize(rolling_ratio_distribution(result, spec));
}
BENCHMARK(BM_ratio_distribution);

} // namespace
