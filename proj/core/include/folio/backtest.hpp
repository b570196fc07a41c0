#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "folio/constraints.hpp"
#include "folio/cvar.hpp"
#include "folio/marketdata.hpp"
#include "folio/meanvar.hpp"

namespace folio {

/// Out-of-sample weight rows from a rolling re-optimization. Row d holds
/// the weights applied to the return of dates[d], estimated from the
/// `window_length` days strictly before it.
struct WeightPath {
    std::vector<std::string> dates;
    std::vector<std::string> tickers;
    Eigen::MatrixXd weights; // D x N
    PortfolioLabel label = PortfolioLabel::custom;
    StrategySpec strategy;
    Eigen::Index window_length = 0;
    /// Dates whose optimization failed and carried the previous weights.
    std::vector<std::string> carried_forward;

    Eigen::Index days() const { return weights.rows(); }
};

struct BacktestResult {
    WealthSeries wealth;
    WeightPath weight_path;
    Eigen::VectorXd excess_returns; // daily portfolio return minus risk-free
};

struct RollingConfig {
    Eigen::Index window = 1008; // 4 x 252 trading days
    /// Grid size for the tangency scans inside the rolling loop. Smaller
    /// than the standalone tangency default because the scan re-runs
    /// every trading day.
    int tangent_grid = 21;
    TangencyDenominator cvar_tangency = TangencyDenominator::cvar;
    SolverConfig solver;
};

/// Roll a fixed-length estimation window through the panel, re-optimizing
/// daily. MVP/TVP estimate means and covariance; M95/T95/M99/T99 use the
/// window rows as equally weighted CVaR scenarios; EQW emits 1/N rows.
/// A failed re-optimization after the first window carries the previous
/// day's weights forward and records the date.
WeightPath rolling_optimize(const ReturnPanel& panel, PortfolioLabel label,
                            const StrategySpec& strategy, const RiskFreeSeries& risk_free,
                            const RollingConfig& cfg = {});

/// Apply a weight path to arithmetic returns: day-start weights, daily
/// re-balancing, multiplicative wealth from initial_wealth, and excess
/// returns against the aligned risk-free rate.
BacktestResult wealth_track(const WeightPath& path, const ReturnPanel& panel,
                            const RiskFreeSeries& risk_free, double initial_wealth = 100.0);

} // namespace folio
