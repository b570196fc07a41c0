#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"
#include "folio/errors.hpp"

namespace {

using folio::cli::Options;

void add_common(CLI::App* cmd, Options& o) {
    cmd->set_config("--config", "", "key=value config file (flags override it)");
    cmd->add_option("--data", o.data, "price panel CSV (date,TICKER,...)")
        ->capture_default_str();
    cmd->add_option("--rf", o.riskfree, "risk-free CSV (date,annual_yield)")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--tickers", o.tickers, "ticker subset (default: all columns)")
        ->delimiter(',');
    cmd->add_option("--window", o.window, "estimation window in trading days")
        ->capture_default_str();
    cmd->add_option("--strategy", o.strategy,
                    "long-only|ls10|ls20|ls30 (backtest default: all four)");
    cmd->add_option("--levels", o.levels, "confidence levels")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "random seed (synthetic data utilities)")
        ->capture_default_str();
    cmd->add_option("--returns", o.returns, "log|arith")->capture_default_str();
    cmd->add_option("--initial", o.initial, "initial wealth")->capture_default_str();
    cmd->add_option("--labels", o.labels, "portfolio subset, e.g. MVP,M95 (default: all six)")
        ->delimiter(',');
    cmd->add_option("--tenor", o.tenor, "risk-free tenor tag: 3m|1y")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"portfolio optimization and tail-risk analytics"};
    app.require_subcommand(1);

    Options ingest_o, frontier_o, backtest_o, metrics_o, hill_o;

    CLI::App* ingest = app.add_subcommand(
        "ingest", "load and align a price panel; emit prices, returns and the EQW track");
    add_common(ingest, ingest_o);

    CLI::App* frontier = app.add_subcommand(
        "frontier", "trace mean-variance and CVaR efficient frontiers with tangent points");
    add_common(frontier, frontier_o);
    frontier->add_option("--points", frontier_o.points, "frontier grid points")
        ->capture_default_str();
    frontier->add_option("--tangent-grid", frontier_o.tangent_grid,
                         "targets scanned for the CVaR tangency")
        ->capture_default_str();
    frontier->add_flag("--tangency-sigma", frontier_o.tangency_sigma,
                       "use standard deviation instead of CVaR in the tangency ratio");

    CLI::App* backtest = app.add_subcommand(
        "backtest", "rolling-window re-optimization and wealth tracks for all portfolios");
    add_common(backtest, backtest_o);
    backtest
        ->add_option("--tangent-grid", backtest_o.rolling_tangent_grid,
                     "targets scanned per day for tangency portfolios")
        ->capture_default_str();
    backtest->add_flag("--tangency-sigma", backtest_o.tangency_sigma,
                       "use standard deviation instead of CVaR in the tangency ratio");

    CLI::App* metrics = app.add_subcommand(
        "metrics", "rolling Sharpe/Rachev/STARR distributions over backtest outputs");
    add_common(metrics, metrics_o);
    metrics->add_option("--sub-window", metrics_o.sub_window, "ratio window length in days")
        ->capture_default_str();
    metrics->add_option("--step", metrics_o.step, "stride between ratio windows")
        ->capture_default_str();

    CLI::App* hill = app.add_subcommand(
        "hill", "Hill tail-index curves with Wald bands for every series");
    add_common(hill, hill_o);
    hill->add_option("--benchmark", hill_o.benchmark, "extra benchmark price CSV");
    hill->add_option("--tail", hill_o.tail, "lower|upper")->capture_default_str();
    hill->add_option("--k-min", hill_o.k_min, "smallest order-statistic count (0 = auto)")
        ->capture_default_str();
    hill->add_option("--k-max", hill_o.k_max, "largest order-statistic count (0 = auto)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (ingest->parsed()) return folio::cli::cmd_ingest(ingest_o);
        if (frontier->parsed()) return folio::cli::cmd_frontier(frontier_o);
        if (backtest->parsed()) return folio::cli::cmd_backtest(backtest_o);
        if (metrics->parsed()) return folio::cli::cmd_metrics(metrics_o);
        if (hill->parsed()) return folio::cli::cmd_hill(hill_o);
    } catch (const folio::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const folio::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
