#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "folio/backtest.hpp"
#include "folio/errors.hpp"

namespace folio {

enum class RatioMetric { sharpe, rachev, starr };

std::string to_string(RatioMetric metric);

/// Mean daily excess return over its sample standard deviation. Reported
/// on daily returns; deliberately never annualized.
double sharpe_ratio(const Eigen::VectorXd& excess);

/// Expected tail gain over expected tail loss: CVaR of the upper tail of
/// the excess returns (at tail probability beta) divided by CVaR of the
/// lower tail (at alpha). Values above one indicate stronger extreme
/// upside than downside at the chosen levels; note that conventions in
/// the literature differ on which direction is "better".
double rachev_ratio(const Eigen::VectorXd& excess, double alpha_tail, double beta_tail);

/// Mean excess return per unit of expected tail loss (CVaR at alpha).
double starr_ratio(const Eigen::VectorXd& excess, double alpha_tail);

/// One rolling-window ratio observation.
struct RatioSample {
    RatioMetric metric = RatioMetric::sharpe;
    double alpha = 0.0; // tail probabilities; zero when not applicable
    double beta = 0.0;
    std::string window_start;
    std::string window_end;
    double value = 0.0;
};

struct RollingRatioSpec {
    RatioMetric metric = RatioMetric::sharpe;
    double alpha = 0.05;
    double beta = 0.05;
    Eigen::Index sub_window = 252;
    Eigen::Index step = 21;
};

struct RatioDistribution {
    std::vector<RatioSample> samples; // sorted by window_start
    int skipped = 0;                  // windows with an undefined ratio
};

/// Sub-window ratio samples over a backtest's excess returns, one per
/// stride. Undefined windows (zero variance, non-positive tail loss) are
/// skipped and counted.
RatioDistribution rolling_ratio_distribution(const BacktestResult& result,
                                             const RollingRatioSpec& spec);

} // namespace folio
