#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "folio/errors.hpp"

namespace folio {

/// Investment strategy: long-only, or long-short with a short budget
/// expressed as a fraction of portfolio value (0.30 = a 130/30 envelope).
struct StrategySpec {
    enum class Kind { long_only, long_short };
    Kind kind = Kind::long_only;
    double leverage = 0.0; // meaningful only for long_short, in (0,1)

    static StrategySpec long_only() { return {Kind::long_only, 0.0}; }
    static StrategySpec long_short(double leverage);

    std::string name() const;
};

/// Linear constraint region for portfolio weights:
///   sum(w) = budget,  lo <= w <= hi,  and optionally
///   sum(max(-w, 0)) <= short_budget.
struct ConstraintSet {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    double budget = 1.0;
    std::optional<double> short_budget;

    Eigen::Index assets() const { return lo.size(); }
    bool is_feasible(const Eigen::VectorXd& w, double tol = 1e-8) const;
};

/// Long-only: bounds [0,1] per asset. Long-short(L): bounds [-L, 1+L]
/// with total short exposure capped at L.
ConstraintSet build_constraints(const StrategySpec& strategy, Eigen::Index n_assets);

} // namespace folio
