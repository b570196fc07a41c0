#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "folio/errors.hpp"

namespace folio {

enum class TailSide { lower, upper };

/// Hill tail-index estimates over a range of order-statistic counts,
/// with Wald confidence bands alpha_hat * (1 ± z/sqrt(k)).
struct HillCurve {
    std::vector<Eigen::Index> k_values;
    std::vector<double> alpha_hat;
    std::vector<double> ci_lower;
    std::vector<double> ci_upper;
    TailSide tail = TailSide::lower;
    Eigen::Index n = 0; // tail sample size the estimates are based on
};

/// Hill estimator on a positive-valued sample:
///   1/alpha_hat = (1/k) * sum_{i=1..k} ln(X_(i) / X_(k+1))
/// over descending order statistics. Scale invariant by construction.
double hill_estimate(const Eigen::VectorXd& sample, Eigen::Index k);

/// Hill plot data for a return series. The lower tail estimates losses
/// (-returns restricted to positive values); the upper tail uses the
/// positive returns.
HillCurve hill_curve(const Eigen::VectorXd& returns, TailSide tail,
                     std::pair<Eigen::Index, Eigen::Index> k_range, double confidence = 0.95);

/// Conventional default Hill-plot range [10, n/10], clamped to valid k.
std::pair<Eigen::Index, Eigen::Index> default_k_range(Eigen::Index tail_size);

} // namespace folio
