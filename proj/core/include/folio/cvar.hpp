#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "folio/constraints.hpp"
#include "folio/meanvar.hpp"
#include "folio/solvers.hpp"

namespace folio {

/// Equally weighted historical scenarios: one row per day, one column per
/// asset. Portfolio loss in scenario t is -returns.row(t)·w.
struct ScenarioMatrix {
    Eigen::MatrixXd returns; // T x N

    Eigen::Index scenarios() const { return returns.rows(); }
    Eigen::Index assets() const { return returns.cols(); }
};

/// Empirical VaR/CVaR at a confidence level; both in loss units
/// (positive = loss), tail_prob = 1 - confidence.
struct CvarEstimate {
    double confidence = 0.95;
    double tail_prob = 0.05;
    double var = 0.0;
    double cvar = 0.0;
};

/// Discrete VaR/CVaR of a loss sample. With k = ceil(alpha*T), VaR is the
/// k-th largest loss and CVaR averages the alpha*T largest losses, the
/// k-th one fractionally weighted. This makes the estimate coincide with
/// the scenario LP optimum for any alpha*T, integer or not.
CvarEstimate empirical_var_cvar(const Eigen::VectorXd& losses, double confidence);

/// Result of a scenario CVaR optimization. `cvar` is the LP objective,
/// `var` the optimal threshold variable.
struct CvarPortfolioResult {
    Portfolio portfolio;
    double cvar = 0.0;
    double var = 0.0;
};

/// Scenario min-CVaR portfolio via the linear program
///   min  z + (1/(alpha T)) sum_t u_t
///   s.t. u_t >= -r_t·w - z,  u >= 0,  sum(w) = budget,
///        optional mean target, constraint-set bounds and short budget.
/// Scenario rows are generated lazily: only tail-active rows enter the
/// master LP, which leaves the optimum unchanged.
CvarPortfolioResult min_cvar_portfolio(const ScenarioMatrix& scenarios, double confidence,
                                       std::optional<double> target_return,
                                       const ConstraintSet& constraints,
                                       const SolverConfig& cfg = {},
                                       const std::optional<Eigen::VectorXd>& warm_start = std::nullopt);

/// One min-CVaR solve per evenly spaced target return; infeasible targets
/// are returned with feasible=false rather than aborting the trace.
std::vector<FrontierPoint> trace_cvar_frontier(const ScenarioMatrix& scenarios, double confidence,
                                               int n_points,
                                               std::pair<double, double> return_range,
                                               const ConstraintSet& constraints,
                                               double risk_free = 0.0,
                                               const SolverConfig& cfg = {});

/// Risk denominator for the tangency scan on a CVaR frontier.
enum class TangencyDenominator { cvar, sigma };

struct CvarTangencyOptions {
    int grid_points = 200;
    TangencyDenominator denominator = TangencyDenominator::cvar;
};

/// Scans a grid of frontier targets and returns the portfolio maximizing
/// (mean - risk_free) / risk, with risk the CVaR by default (a standard
/// deviation variant is available via the options).
Portfolio tangent_cvar_portfolio(const ScenarioMatrix& scenarios, double confidence,
                                 double risk_free, const ConstraintSet& constraints,
                                 const CvarTangencyOptions& options = {},
                                 const SolverConfig& cfg = {});

} // namespace folio
