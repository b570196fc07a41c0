// Acceptance suite: one numbered check per run, one pass/fail line each.
// Usage: folio_acceptance <criterion 1..11> [--cli PATH] [--data DIR] [--work DIR]

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "folio/backtest.hpp"
#include "folio/cvar.hpp"
#include "folio/io.hpp"
#include "folio/marketdata.hpp"
#include "folio/meanvar.hpp"
#include "folio/riskmetrics.hpp"
#include "folio/solvers.hpp"
#include "folio/stats.hpp"
#include "folio/synthetic.hpp"
#include "folio/tailrisk.hpp"
#include "oracles.hpp"
#include "xml_check.hpp"

using namespace folio;
namespace fs = std::filesystem;

namespace {

struct Context {
    std::string cli_path = "build/tools/folio";
    std::string data_dir = "data";
    std::string work_dir = "acceptance_work";
};

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

Eigen::MatrixXd random_pd(Rng& rng, int n) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
    return 1e-4 * (a * a.transpose() / n + 0.3 * Eigen::MatrixXd::Identity(n, n));
}

// --------------------------------------------------------------------------
// 1. Closed-form vs QP minimum-variance weights.
void criterion1(const Context&) {
    Rng rng(20250101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 5);
        const Eigen::MatrixXd sigma = random_pd(rng, n);
        Eigen::VectorXd means(n);
        for (int i = 0; i < n; ++i) means[i] = 1e-4 + 2e-4 * rng.uniform();

        QuadraticProgram qp;
        qp.hessian = sigma;
        qp.c = Eigen::VectorXd::Zero(n);
        qp.eq_a = Eigen::MatrixXd::Ones(1, n);
        qp.eq_b = Eigen::VectorXd::Ones(1);
        qp.in_a.resize(0, n);
        qp.in_b.resize(0);
        qp.lo = Eigen::VectorXd::Constant(n, -kInf);
        qp.hi = Eigen::VectorXd::Constant(n, kInf);
        const SolverSolution sol = solve_qp(qp);
        require(sol.status == SolveStatus::optimal, "QP did not report optimal");

        const Eigen::VectorXd inv_ones =
            solve_spd_system(sigma, Eigen::MatrixXd::Ones(n, 1)).col(0);
        const Eigen::VectorXd closed = inv_ones / inv_ones.sum();
        const double gap = (sol.x - closed).cwiseAbs().maxCoeff();
        require(gap <= 1e-8, "trial " + std::to_string(trial) + ": weight gap " +
                                 std::to_string(gap) + " above 1e-8");
    }
}

// --------------------------------------------------------------------------
// 2. Frontier identity at every traced point.
void criterion2(const Context&) {
    Rng rng(20250202);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.next() % 4);
        const Eigen::MatrixXd sigma = random_pd(rng, n);
        Eigen::VectorXd means(n);
        for (int i = 0; i < n; ++i) means[i] = 1e-4 + 3e-4 * rng.uniform();

        const FrontierCoefficients fc = frontier_coefficients(means, sigma);
        const auto points =
            trace_frontier(fc, 101, {means.minCoeff() - 1e-4, means.maxCoeff() + 1e-4});
        for (const auto& pt : points) {
            const double lhs = pt.risk * pt.risk * fc.delta;
            const double rhs = fc.b * pt.target_return * pt.target_return -
                               2.0 * fc.c * pt.target_return + fc.a;
            require(std::abs(lhs - rhs) <= 1e-10,
                    "identity residual " + std::to_string(std::abs(lhs - rhs)));
        }
    }
}

// --------------------------------------------------------------------------
// 3. CVaR LP vs simplex grid search on 20 seeded instances.
void criterion3(const Context&) {
    for (int seed = 1; seed <= 20; ++seed) {
        Rng rng(static_cast<std::uint64_t>(seed) * 101);
        ScenarioMatrix scen;
        scen.returns.resize(20, 3);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 3; ++j)
                scen.returns(i, j) = 0.0003 * (j + 1) + 0.0008 * rng.normal();
        for (int j = 0; j < 3; ++j) {
            scen.returns(2 * j, j) -= 0.010 + 0.004 * rng.uniform();
            scen.returns(2 * j + 1, j) -= 0.006 + 0.002 * rng.uniform();
        }
        const ConstraintSet cs = build_constraints(StrategySpec::long_only(), 3);
        const CvarPortfolioResult res = min_cvar_portfolio(scen, 0.95, std::nullopt, cs);

        const auto [gw, gv] = oracle::simplex_grid_search(3, 1e-2, [&](const Eigen::VectorXd& w) {
            const Eigen::VectorXd losses = -(scen.returns * w);
            std::vector<double> ls(losses.data(), losses.data() + losses.size());
            return oracle::sorted_var_cvar(ls, 0.05).second;
        });
        const double dw = (res.portfolio.weights - gw).cwiseAbs().maxCoeff();
        const double dobj = std::abs(res.cvar - gv);
        require(dw <= 1e-2 + 1e-9,
                "seed " + std::to_string(seed) + ": weight gap " + std::to_string(dw));
        require(dobj <= 1e-4,
                "seed " + std::to_string(seed) + ": objective gap " + std::to_string(dobj));
    }
}

// --------------------------------------------------------------------------
// 4. CVaR-0.99 frontier at or above the CVaR-0.95 frontier pointwise.
void criterion4(const Context&) {
    Rng rng(20250404);
    ScenarioMatrix scen;
    scen.returns.resize(400, 5);
    for (int i = 0; i < 400; ++i) {
        const double common = rng.normal();
        for (int j = 0; j < 5; ++j)
            scen.returns(i, j) = 1e-4 * (j + 1) +
                                 0.008 * (1.0 + 0.15 * j) * (0.6 * common + 0.8 * rng.normal());
    }
    const ConstraintSet cs = build_constraints(StrategySpec::long_only(), 5);
    const Eigen::VectorXd mu = sample_means(scen.returns);
    const std::pair<double, double> range{mu.minCoeff(), mu.maxCoeff()};

    const auto lo = trace_cvar_frontier(scen, 0.95, 25, range, cs);
    const auto hi = trace_cvar_frontier(scen, 0.99, 25, range, cs);
    require(lo.size() == hi.size(), "frontier point counts differ");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        require(lo[i].feasible && hi[i].feasible, "infeasible frontier point");
        require(hi[i].risk >= lo[i].risk - 1e-12,
                "violation at point " + std::to_string(i) + ": cvar99 " +
                    std::to_string(hi[i].risk) + " < cvar95 " + std::to_string(lo[i].risk));
    }
}

// --------------------------------------------------------------------------
// 5. MVP weights from log vs arithmetic returns within 1e-3.
void criterion5(const Context&) {
    Rng rng(20250505);
    const int t = 1200, n = 5;
    Eigen::MatrixXd arith(t, n);
    for (int i = 0; i < t; ++i) {
        const double common = rng.normal();
        for (int j = 0; j < n; ++j) {
            double r = 1.5e-4 * (j + 1) + 0.003 * (1.0 + 0.2 * j) * (0.5 * common + 0.87 * rng.normal());
            arith(i, j) = std::clamp(r, -0.01, 0.01);
        }
    }
    const Eigen::MatrixXd logr = (arith.array() + 1.0).log();

    const auto mvp_weights = [](const Eigen::MatrixXd& obs) {
        return min_variance_portfolio(
                   frontier_coefficients(sample_means(obs), sample_covariance(obs)))
            .weights;
    };
    const double gap = (mvp_weights(arith) - mvp_weights(logr)).cwiseAbs().maxCoeff();
    require(gap <= 1e-3, "MVP weight gap " + std::to_string(gap) + " above 1e-3");
}

// --------------------------------------------------------------------------
// 6. Strategy compliance and leverage nesting on a 1,200-day panel.
void criterion6(const Context&) {
    const SyntheticDataset data = make_synthetic_dataset({.days = 1200, .seed = 74205});
    const ReturnPanel panel = compute_returns(data.prices, ReturnKind::log);
    const RiskFreeSeries rf = align_risk_free(data.yields, panel.dates);
    RollingConfig cfg; // window 1008

    const std::vector<StrategySpec> strategies = {
        StrategySpec::long_only(), StrategySpec::long_short(0.1), StrategySpec::long_short(0.2),
        StrategySpec::long_short(0.3)};
    const std::vector<PortfolioLabel> labels = {PortfolioLabel::mvp, PortfolioLabel::tvp,
                                                PortfolioLabel::m95, PortfolioLabel::t95,
                                                PortfolioLabel::m99, PortfolioLabel::t99};

    long rows = 0;
    for (const auto& strat : strategies) {
        const ConstraintSet cs = build_constraints(strat, panel.assets());
        for (const auto label : labels) {
            const WeightPath path = rolling_optimize(panel, label, strat, rf, cfg);
            for (Eigen::Index d = 0; d < path.days(); ++d) {
                require(cs.is_feasible(path.weights.row(d).transpose(), 1e-8),
                        to_string(label) + " " + strat.name() + " day " + std::to_string(d) +
                            " violates its constraints");
                ++rows;
            }
        }
    }
    require(rows == 4 * 6 * (panel.days() - cfg.window), "unexpected row count");

    // Nesting: larger short budgets cannot worsen the in-sample optimum.
    const Eigen::MatrixXd window = panel.returns.bottomRows(cfg.window);
    const Eigen::VectorXd means = sample_means(window);
    const Eigen::MatrixXd cov = sample_covariance(window);
    double prev_var = kInf, prev_cvar95 = kInf, prev_cvar99 = kInf;
    for (const auto& strat : strategies) {
        const ConstraintSet cs = build_constraints(strat, panel.assets());
        const Portfolio mv = constrained_mv_portfolio(means, cov, std::nullopt, cs);
        const double var = mv.weights.dot(cov * mv.weights);
        require(var <= prev_var + 1e-10, "min-variance objective increased with leverage");
        prev_var = var;
        const double c95 = min_cvar_portfolio({window}, 0.95, std::nullopt, cs).cvar;
        require(c95 <= prev_cvar95 + 1e-8, "min-CVaR-95 objective increased with leverage");
        prev_cvar95 = c95;
        const double c99 = min_cvar_portfolio({window}, 0.99, std::nullopt, cs).cvar;
        require(c99 <= prev_cvar99 + 1e-8, "min-CVaR-99 objective increased with leverage");
        prev_cvar99 = c99;
    }
}

// --------------------------------------------------------------------------
// 7. No lookahead: day-t perturbation leaves rows dated <= t untouched.
void criterion7(const Context&) {
    const SyntheticDataset data = make_synthetic_dataset({.days = 70, .seed = 20250707});
    const ReturnPanel panel = compute_returns(data.prices, ReturnKind::log);
    const RiskFreeSeries rf = align_risk_free(data.yields, panel.dates);
    RollingConfig cfg;
    cfg.window = 40;
    cfg.tangent_grid = 7;

    const Eigen::Index perturb_day = 55;
    for (const auto label :
         {PortfolioLabel::mvp, PortfolioLabel::tvp, PortfolioLabel::m95, PortfolioLabel::t99}) {
        const WeightPath base =
            rolling_optimize(panel, label, StrategySpec::long_only(), rf, cfg);
        ReturnPanel bumped = panel;
        bumped.returns.row(perturb_day).array() -= 0.08;
        const WeightPath moved =
            rolling_optimize(bumped, label, StrategySpec::long_only(), rf, cfg);
        for (Eigen::Index d = 0; d < base.days(); ++d) {
            if (cfg.window + d > perturb_day) continue;
            for (Eigen::Index j = 0; j < base.weights.cols(); ++j)
                require(base.weights(d, j) == moved.weights(d, j),
                        to_string(label) + ": row " + std::to_string(d) +
                            " changed despite using only prior data");
        }
    }
}

// --------------------------------------------------------------------------
// 8. Ratio oracles, exact symmetry, exact scale invariance.
void criterion8(const Context&) {
    Rng rng(20250808);
    for (int trial = 0; trial < 1000; ++trial) {
        const int t = 8 + static_cast<int>(rng.next() % 120);
        Eigen::VectorXd x(t);
        std::vector<double> xs(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i) {
            x[i] = 0.01 * rng.normal() + 0.0005;
            xs[static_cast<std::size_t>(i)] = x[i];
        }
        const double alpha = 0.05 + 0.45 * rng.uniform();
        const double beta = 0.05 + 0.45 * rng.uniform();

        require(std::abs(sharpe_ratio(x) - oracle::sharpe_reference(xs)) <= 1e-12,
                "sharpe mismatch");
        try {
            const double rr = rachev_ratio(x, alpha, beta);
            require(std::abs(rr - oracle::rachev_reference(xs, alpha, beta)) <=
                        1e-12 * std::max(1.0, std::abs(rr)),
                    "rachev mismatch");
        } catch (const UndefinedRatioError&) {
        }
        try {
            const double st = starr_ratio(x, alpha);
            require(std::abs(st - oracle::starr_reference(xs, alpha)) <=
                        1e-12 * std::max(1.0, std::abs(st)),
                    "starr mismatch");
        } catch (const UndefinedRatioError&) {
        }
    }

    // Rachev(alpha=beta) on symmetrized samples is exactly 1.
    for (int trial = 0; trial < 50; ++trial) {
        const int half = 5 + static_cast<int>(rng.next() % 40);
        Eigen::VectorXd sym(2 * half);
        for (int i = 0; i < half; ++i) {
            sym[2 * i] = rng.normal();
            sym[2 * i + 1] = -sym[2 * i];
        }
        const double alpha = 0.05 + 0.45 * rng.uniform();
        require(rachev_ratio(sym, alpha, alpha) == 1.0, "rachev symmetry not exact");
    }

    // Sharpe scale invariance, exact for power-of-two factors.
    Eigen::VectorXd x(64);
    for (int i = 0; i < 64; ++i) x[i] = 0.01 * rng.normal() + 0.0003;
    const double base = sharpe_ratio(x);
    for (double c : {2.0, 8.0, 0.5, 0.015625})
        require(sharpe_ratio((c * x).eval()) == base, "sharpe scale invariance not exact");
}

// --------------------------------------------------------------------------
// 9. Hill estimator: Wald coverage and deterministic recovery.
void criterion9(const Context&) {
    const double alpha = 2.5;
    const int n = 5000;
    const Eigen::Index k = static_cast<Eigen::Index>(std::floor(std::sqrt(double(n))));
    int covered = 0;
    const int reps = 200;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(90000 + static_cast<std::uint64_t>(rep));
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x[i] = std::pow(rng.uniform(), -1.0 / alpha);
        const HillCurve curve = hill_curve(x, TailSide::upper, {k, k}, 0.95);
        if (curve.ci_lower[0] <= alpha && alpha <= curve.ci_upper[0]) ++covered;
    }
    require(covered >= 180, "coverage " + std::to_string(covered) + "/200 below 90%");

    Eigen::VectorXd grid(10000);
    for (int i = 0; i < 10000; ++i)
        grid[i] = std::pow(static_cast<double>(i + 1) / 10000.0, -1.0 / alpha);
    const double a = hill_estimate(grid, 50);
    require(std::abs(a - alpha) / alpha <= 0.05,
            "grid recovery off by " + std::to_string(std::abs(a - alpha) / alpha));
}

// --------------------------------------------------------------------------
// 10. Pipeline qualitative structure on the bundled dataset.
void criterion10(const Context& ctx) {
    const PricePanel prices = load_price_panel(ctx.data_dir + "/prices.csv");
    const PricePanel bench = load_price_panel(ctx.data_dir + "/benchmark.csv");
    const YieldSeries yields = load_yield_series(ctx.data_dir + "/riskfree.csv");
    const ReturnPanel logp = compute_returns(prices, ReturnKind::log);
    const ReturnPanel arith = compute_returns(prices, ReturnKind::arithmetic);
    const RiskFreeSeries rf = align_risk_free(yields, logp.dates);

    RollingConfig cfg;
    int strategies_won = 0;
    for (const auto& strat : {StrategySpec::long_only(), StrategySpec::long_short(0.1),
                              StrategySpec::long_short(0.2), StrategySpec::long_short(0.3)}) {
        const WeightPath eqw_path = rolling_optimize(arith, PortfolioLabel::eqw, strat, rf, cfg);
        const double eqw_final =
            wealth_track(eqw_path, arith, rf, 100.0).wealth.wealth.tail(1)(0);
        int wins = 0;
        for (const auto label : {PortfolioLabel::mvp, PortfolioLabel::tvp, PortfolioLabel::m95,
                                 PortfolioLabel::t95, PortfolioLabel::m99, PortfolioLabel::t99}) {
            const WeightPath path = rolling_optimize(logp, label, strat, rf, cfg);
            if (wealth_track(path, arith, rf, 100.0).wealth.wealth.tail(1)(0) >= eqw_final)
                ++wins;
        }
        if (wins == 6) ++strategies_won;
    }
    require(strategies_won >= 3, "optimized portfolios beat EQW in only " +
                                     std::to_string(strategies_won) + "/4 strategies");

    const Eigen::VectorXd eqw_returns = arith.returns.rowwise().mean();
    const ReturnPanel blog = compute_returns(bench, ReturnKind::log);
    const Eigen::Index k = eqw_returns.size() / 20;
    const double a_eqw = hill_estimate((-eqw_returns).eval(), k);
    const double a_bmk = hill_estimate((-blog.returns.col(0)).eval(), k);
    require(a_eqw < a_bmk, "EQW tail index " + std::to_string(a_eqw) +
                               " not below benchmark " + std::to_string(a_bmk));
}

// --------------------------------------------------------------------------
// 11. CLI end to end: exit codes, well-formed outputs, bit-identical rerun.
int run_cli(const std::string& cmdline) {
    const int rc = std::system(cmdline.c_str());
    if (rc < 0) return -1;
    return WEXITSTATUS(rc);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion11(const Context& ctx) {
    const std::string prices = ctx.data_dir + "/prices.csv";
    const std::string rf = ctx.data_dir + "/riskfree.csv";
    const std::string bench = ctx.data_dir + "/benchmark.csv";

    const auto run_all = [&](const std::string& out) {
        fs::remove_all(out);
        fs::create_directories(out);
        const std::string common =
            " --data " + prices + " --rf " + rf + " --out " + out + " --seed 74205";
        const std::vector<std::string> cmds = {
            ctx.cli_path + " ingest" + common,
            ctx.cli_path + " frontier" + common + " --points 60",
            ctx.cli_path + " backtest" + common,
            ctx.cli_path + " metrics" + common + " --sub-window 63",
            ctx.cli_path + " hill" + common + " --benchmark " + bench,
        };
        for (const auto& cmd : cmds) {
            const int rc = run_cli(cmd + " > /dev/null 2>&1");
            require(rc == 0, "exit code " + std::to_string(rc) + " from: " + cmd);
        }
    };

    const std::string out1 = ctx.work_dir + "/run1";
    const std::string out2 = ctx.work_dir + "/run2";
    run_all(out1);
    run_all(out2);

    std::size_t files = 0, svgs = 0;
    for (const auto& entry : fs::directory_iterator(out1)) {
        const fs::path rel = entry.path().filename();
        const std::string a = read_file(entry.path());
        const std::string b = read_file(fs::path(out2) / rel);
        require(!a.empty(), rel.string() + " is empty");
        require(a == b, rel.string() + " differs between reruns");
        ++files;
        if (rel.extension() == ".svg") {
            require(testsupport::well_formed_xml(a), rel.string() + " is not well-formed XML");
            ++svgs;
        } else if (rel.extension() == ".csv") {
            require(a.find(',') != std::string::npos && a.find('\n') != std::string::npos,
                    rel.string() + " does not look like a CSV table");
        }
    }
    require(files >= 100, "expected the full output set, saw " + std::to_string(files));
    require(svgs >= 20, "expected the full SVG set, saw " + std::to_string(svgs));
}

struct Criterion {
    const char* description;
    double budget_seconds;
    std::function<void(const Context&)> run;
};

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <criterion 1..11> [--cli PATH] [--data DIR] [--work DIR]\n",
                     argv[0]);
        return 2;
    }
    Context ctx;
    const int which = std::atoi(argv[1]);
    for (int i = 2; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") ctx.cli_path = argv[i + 1];
        else if (flag == "--data") ctx.data_dir = argv[i + 1];
        else if (flag == "--work") ctx.work_dir = argv[i + 1];
    }

    const std::map<int, Criterion> criteria = {
        {1, {"closed-form vs QP minimum-variance weights (50 instances, 1e-8)", 5, criterion1}},
        {2, {"frontier identity sigma^2*delta = b*r^2 - 2c*r + a (1e-10)", 1, criterion2}},
        {3, {"min-CVaR LP vs 1e-2 simplex grid search (20 instances)", 30, criterion3}},
        {4, {"CVaR-0.99 frontier >= CVaR-0.95 frontier pointwise", 10, criterion4}},
        {5, {"MVP weights from log vs arithmetic returns within 1e-3", 2, criterion5}},
        {6, {"strategy compliance and leverage nesting, 6 labels x 4 strategies", 120, criterion6}},
        {7, {"no lookahead: rows dated <= t unchanged by day-t perturbation", 10, criterion7}},
        {8, {"Sharpe/Rachev/STARR vs sorting oracle, exact symmetry and scaling", 5, criterion8}},
        {9, {"Hill Wald-band coverage >= 90% and deterministic grid recovery", 30, criterion9}},
        {10, {"pipeline structure: optimized vs EQW wealth, EQW vs benchmark tails", 120, criterion10}},
        {11, {"CLI end-to-end: five commands, well-formed outputs, bit-identical rerun", 180, criterion11}},
    };

    const auto it = criteria.find(which);
    if (it == criteria.end()) {
        std::fprintf(stderr, "unknown criterion %d\n", which);
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
        it->second.run(ctx);
    } catch (const Failure& f) {
        failure = f.message;
    } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
    if (failure.empty() && elapsed > it->second.budget_seconds)
        failure = "runtime " + std::to_string(elapsed) + "s exceeds the " +
                  std::to_string(it->second.budget_seconds) + "s budget";

    if (failure.empty()) {
        std::printf("[PASS] criterion %2d: %s (%.1fs)\n", which, it->second.description, elapsed);
        return 0;
    }
    std::printf("[FAIL] criterion %2d: %s (%.1fs) -- %s\n", which, it->second.description,
                elapsed, failure.c_str());
    return 1;
}
