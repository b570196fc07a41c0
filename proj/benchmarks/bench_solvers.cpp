#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "folio/cvar.hpp"
#include "folio/meanvar.hpp"
#include "folio/solvers.hpp"
#include "folio/stats.hpp"
#include "folio/synthetic.hpp"

using namespace folio;

namespace {

Eigen::MatrixXd scenario_block(Eigen::Index t, Eigen::Index n, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd r(t, n);
    for (Eigen::Index i = 0; i < t; ++i) {
        const double common = rng.normal();
        for (Eigen::Index j = 0; j < n; ++j)
            r(i, j) = 1e-4 * (j + 1) + 0.006 * (0.6 * common + 0.8 * rng.normal());
    }
    return r;
}

void BM_spd_solve(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    const Eigen::MatrixXd obs = scenario_block(4 * n, n, 1);
    const Eigen::MatrixXd sigma = sample_covariance(obs);
    const Eigen::MatrixXd rhs = Eigen::MatrixXd::Ones(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_spd_system(sigma, rhs));
}
BENCHMARK(BM_spd_solve)->Arg(6)->Arg(30);

void BM_lp_simplex(benchmark::State& state) {
    // Budget + box LP with a dense random cost.
    const Eigen::Index n = state.range(0);
    Rng rng(2);
    LinearProgram lp;
    lp.c.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) lp.c[j] = rng.normal();
    lp.eq_a = Eigen::MatrixXd::Ones(1, n);
    lp.eq_b = Eigen::VectorXd::Ones(1);
    lp.lo = Eigen::VectorXd::Constant(n, -0.3);
    lp.hi = Eigen::VectorXd::Constant(n, 1.3);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_lp_simplex)->Arg(10)->Arg(50);

void BM_qp_active_set(benchmark::State& state) {
    const Eigen::Index n = state.range(0);
    const Eigen::MatrixXd obs = scenario_block(6 * n, n, 3);
    QuadraticProgram qp;
    qp.hessian = sample_covariance(obs);
    qp.c = Eigen::VectorXd::Zero(n);
    qp.eq_a = Eigen::MatrixXd::Ones(1, n);
    qp.eq_b = Eigen::VectorXd::Ones(1);
    qp.in_a.resize(0, n);
    qp.in_b.resize(0);
    qp.lo = Eigen::VectorXd::Constant(n, 0.0);
    qp.hi = Eigen::VectorXd::Constant(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_qp(qp));
}
BENCHMARK(BM_qp_active_set)->Arg(6)->Arg(30);

void BM_min_cvar_window(benchmark::State& state) {
    // One rolling-window CVaR solve at the backtest's working size.
    const Eigen::Index t = state.range(0);
    ScenarioMatrix scen{scenario_block(t, 6, 4)};
    const ConstraintSet cs = build_constraints(StrategySpec::long_short(0.3), 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(min_cvar_portfolio(scen, 0.95, std::nullopt, cs));
}
BENCHMARK(BM_min_cvar_window)->Arg(252)->Arg(1008)->Unit(benchmark::kMillisecond);

void BM_frontier_trace(benchmark::State& state) {
    const Eigen::MatrixXd obs = scenario_block(1008, 6, 5);
    const FrontierCoefficients fc =
        frontier_coefficients(sample_means(obs), sample_covariance(obs));
    const Eigen::VectorXd mu = sample_means(obs);
    for (auto _ : state)
        benchmark::DoNotOptimize(trace_frontier(fc, 200, {mu.minCoeff(), mu.maxCoeff()}));
}
BENCHMARK(BM_frontier_trace);

} // namespace

BENCHMARK_MAIN();
