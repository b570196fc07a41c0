#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "folio/errors.hpp"

namespace folio {

enum class ReturnKind { log, arithmetic };

/// Date-aligned panel of adjusted close prices, one column per ticker.
/// Dates are opaque ISO-8601 labels; ordering is lexicographic, which for
/// ISO dates coincides with calendar order. No calendar arithmetic is done.
struct PricePanel {
    std::vector<std::string> dates;   // strictly increasing, size T
    std::vector<std::string> tickers; // size N
    Eigen::MatrixXd prices;           // T x N, strictly positive

    Eigen::Index days() const { return prices.rows(); }
    Eigen::Index assets() const { return prices.cols(); }
};

/// Daily returns derived from a PricePanel; dates are the later date of
/// each consecutive pair.
struct ReturnPanel {
    std::vector<std::string> dates;   // size T-1
    std::vector<std::string> tickers;
    Eigen::MatrixXd returns;          // (T-1) x N
    ReturnKind kind = ReturnKind::log;

    Eigen::Index days() const { return returns.rows(); }
    Eigen::Index assets() const { return returns.cols(); }
};

enum class RiskFreeTenor { three_month, one_year };

/// Raw annual-yield observations as read from a `date,annual_yield` CSV
/// (yield as a decimal fraction, 0.0252 = 2.52%).
struct YieldSeries {
    std::vector<std::string> dates;
    std::vector<double> annual_yield;
};

/// Per-day simple risk-free rate aligned to a target date grid.
struct RiskFreeSeries {
    std::vector<std::string> dates;
    Eigen::VectorXd daily_rate;
    RiskFreeTenor source_tenor = RiskFreeTenor::three_month;
};

/// Cumulative wealth of a strategy, compounded from initial_wealth.
/// wealth[0] already includes the first period's return.
struct WealthSeries {
    std::vector<std::string> dates;
    Eigen::VectorXd wealth;
    double initial_wealth = 100.0;
};

/// Load a `date,TICKER1,TICKER2,...` CSV. When `tickers` is non-empty the
/// panel is restricted to that subset, in the given order. Rows survive
/// only when every requested ticker has a value (strict date intersection).
PricePanel load_price_panel(const std::string& path,
                            const std::vector<std::string>& tickers = {});

ReturnPanel compute_returns(const PricePanel& panel, ReturnKind kind);

/// Equally weighted benchmark: each day's portfolio return is the
/// cross-sectional mean of asset returns, compounded multiplicatively.
/// Requires arithmetic returns.
WealthSeries build_eqw_track(const ReturnPanel& panel, double initial_wealth);

YieldSeries load_yield_series(const std::string& path);

/// Align annual yields onto a target date grid: the most recent yield on
/// or before each date, divided by 252 to a per-day simple rate.
RiskFreeSeries align_risk_free(const YieldSeries& yields,
                               const std::vector<std::string>& dates,
                               RiskFreeTenor tenor = RiskFreeTenor::three_month);

} // namespace folio
