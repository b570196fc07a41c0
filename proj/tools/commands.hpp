#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace folio::cli {

/// Options shared by every subcommand, populated from defaults, an
/// optional key=value config file, and command-line flags, in that order.
struct Options {
    std::string data = "data/prices.csv";
    std::string riskfree = "data/riskfree.csv";
    std::string benchmark;
    std::string out = "out";
    std::vector<std::string> tickers;
    long window = 1008;
    std::string strategy; // empty = all four for backtest, long-only elsewhere
    std::vector<double> levels = {0.95, 0.99};
    std::uint64_t seed = 74205;
    std::string returns = "log";
    double initial = 100.0;
    std::vector<std::string> labels; // portfolio subset; empty = all six
    std::string tenor = "3m";        // risk-free tenor tag: 3m|1y

    // frontier
    int points = 100;
    int tangent_grid = 200;
    bool tangency_sigma = false;

    // backtest
    int rolling_tangent_grid = 21;

    // metrics
    long sub_window = 252;
    long step = 21;

    // hill
    std::string tail = "lower";
    long k_min = 0; // 0 = default range
    long k_max = 0;
};

int cmd_ingest(const Options& o);
int cmd_frontier(const Options& o);
int cmd_backtest(const Options& o);
int cmd_metrics(const Options& o);
int cmd_hill(const Options& o);

} // namespace folio::cli
