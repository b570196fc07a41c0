#include "folio/constraints.hpp"

#include <cmath>

namespace folio {

StrategySpec StrategySpec::long_short(double leverage) {
    if (!(leverage > 0.0 && leverage < 1.0))
        throw ParameterError("long-short leverage must lie in (0,1)");
    return {Kind::long_short, leverage};
}

std::string StrategySpec::name() const {
    if (kind == Kind::long_only) return "long-only";
    const int pct = static_cast<int>(std::lround(leverage * 100.0));
    return "ls" + std::to_string(pct);
}

bool ConstraintSet::is_feasible(const Eigen::VectorXd& w, double tol) const {
    if (w.size() != lo.size()) return false;
    if (std::abs(w.sum() - budget) > tol) return false;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] < lo[i] - tol || w[i] > hi[i] + tol) return false;
    if (short_budget) {
        const double shorts = (-w.array()).max(0.0).sum();
        if (shorts > *short_budget + tol) return false;
    }
    return true;
}

ConstraintSet build_constraints(const StrategySpec& strategy, Eigen::Index n_assets) {
    if (n_assets < 1) throw ParameterError("need at least one asset");
    ConstraintSet cs;
    cs.budget = 1.0;
    if (strategy.kind == StrategySpec::Kind::long_only) {
        cs.lo = Eigen::VectorXd::Constant(n_assets, 0.0);
        cs.hi = Eigen::VectorXd::Constant(n_assets, 1.0);
    } else {
        const double l = strategy.leverage;
        if (!(l > 0.0 && l < 1.0)) throw ParameterError("long-short leverage must lie in (0,1)");
        cs.lo = Eigen::VectorXd::Constant(n_assets, -l);
        cs.hi = Eigen::VectorXd::Constant(n_assets, 1.0 + l);
        cs.short_budget = l;
    }
    return cs;
}

} // namespace folio
