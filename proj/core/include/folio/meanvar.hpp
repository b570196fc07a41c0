#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folio/constraints.hpp"
#include "folio/solvers.hpp"

namespace folio {

/// Closed-form state of the unconstrained mean-variance frontier:
///   a = r̄ᵀΣ⁻¹r̄,  b = eᵀΣ⁻¹e,  c = r̄ᵀΣ⁻¹e,  delta = a·b − c²,
/// and the weight decomposition w*(target) = target·w1 + w2.
struct FrontierCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double delta = 0.0;
    Eigen::VectorXd w1; // sums to 0
    Eigen::VectorXd w2; // sums to 1
    Eigen::VectorXd means;
    Eigen::MatrixXd covariance;
    bool degenerate = false; // all means equal: delta vanishes

    /// Return of the minimum-variance portfolio, c/b.
    double mvp_return() const { return c / b; }
};

/// One traced frontier point. `risk` is the standard deviation on
/// mean-variance frontiers and the CVaR on CVaR frontiers.
struct FrontierPoint {
    double target_return = 0.0;
    double risk = 0.0;
    double sharpe_like = 0.0; // (target_return - risk_free) / risk
    Eigen::VectorXd weights;
    bool feasible = true;
};

enum class PortfolioLabel { mvp, tvp, m95, t95, m99, t99, eqw, custom };

std::string to_string(PortfolioLabel label);

struct Portfolio {
    PortfolioLabel label = PortfolioLabel::custom;
    Eigen::VectorXd weights;
    std::string as_of; // empty when not tied to a specific window
};

FrontierCoefficients frontier_coefficients(const Eigen::VectorXd& means,
                                           const Eigen::MatrixXd& covariance,
                                           const SolverConfig& cfg = {});

/// w* = target·w1 + w2; throws DegeneracyError on an equal-means frontier.
Eigen::VectorXd frontier_weights(const FrontierCoefficients& coeffs, double target_return);

Portfolio min_variance_portfolio(const FrontierCoefficients& coeffs);

/// Maximum-Sharpe frontier portfolio: weights proportional to
/// Σ⁻¹(r̄ − r_f·e). Throws DegeneracyError when c − b·r_f = 0.
Portfolio tangent_portfolio(const FrontierCoefficients& coeffs, double risk_free);

std::vector<FrontierPoint> trace_frontier(const FrontierCoefficients& coeffs, int n_points,
                                          std::pair<double, double> return_range,
                                          double risk_free = 0.0);

/// Objective for constrained mean-variance optimization.
struct MvObjective {
    enum class Kind { min_variance, max_sharpe };
    Kind kind = Kind::min_variance;
    double risk_free = 0.0;    // used by max_sharpe
    int sharpe_grid_points = 200;

    static MvObjective min_variance() { return {}; }
    static MvObjective max_sharpe(double risk_free, int grid_points = 200) {
        return {Kind::max_sharpe, risk_free, grid_points};
    }
};

/// Mean-variance optimization under a ConstraintSet through the QP kernel.
/// With max_sharpe, a grid of target returns spanning the asset means is
/// scanned and the best (mean − r_f)/σ point returned.
Portfolio constrained_mv_portfolio(const Eigen::VectorXd& means, const Eigen::MatrixXd& covariance,
                                   std::optional<double> target_return,
                                   const ConstraintSet& constraints,
                                   const MvObjective& objective = {},
                                   const SolverConfig& cfg = {},
                                   const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

} // namespace folio
