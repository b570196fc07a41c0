#include "folio/meanvar.hpp"

#include <algorithm>
#include <cmath>

namespace folio {

std::string to_string(PortfolioLabel label) {
    switch (label) {
    case PortfolioLabel::mvp: return "MVP";
    case PortfolioLabel::tvp: return "TVP";
    case PortfolioLabel::m95: return "M95";
    case PortfolioLabel::t95: return "T95";
    case PortfolioLabel::m99: return "M99";
    case PortfolioLabel::t99: return "T99";
    case PortfolioLabel::eqw: return "EQW";
    case PortfolioLabel::custom: return "custom";
    }
    return "custom";
}

FrontierCoefficients frontier_coefficients(const Eigen::VectorXd& means,
                                           const Eigen::MatrixXd& covariance,
                                           const SolverConfig& cfg) {
    const Eigen::Index n = means.size();
    if (n < 2) throw ParameterError("frontier needs at least 2 assets");
    if (covariance.rows() != n || covariance.cols() != n)
        throw ParameterError("covariance dimension mismatch");

    Eigen::MatrixXd rhs(n, 2);
    rhs.col(0) = means;
    rhs.col(1) = Eigen::VectorXd::Ones(n);
    const Eigen::MatrixXd sol = solve_spd_system(covariance, rhs, cfg);
    const Eigen::VectorXd inv_means = sol.col(0); // Σ⁻¹ r̄
    const Eigen::VectorXd inv_ones = sol.col(1);  // Σ⁻¹ e

    FrontierCoefficients fc;
    fc.means = means;
    fc.covariance = covariance;
    fc.a = means.dot(inv_means);
    fc.b = inv_ones.sum();
    fc.c = means.dot(inv_ones);
    fc.delta = fc.a * fc.b - fc.c * fc.c;

    const double spread = means.maxCoeff() - means.minCoeff();
    fc.degenerate = spread < 1e-14 * (1.0 + means.cwiseAbs().maxCoeff()) ||
                    fc.delta <= 1e-12 * std::abs(fc.a * fc.b);
    if (fc.degenerate) {
        fc.w1 = Eigen::VectorXd::Zero(n);
        fc.w2 = inv_ones / fc.b;
    } else {
        fc.w1 = (fc.b * inv_means - fc.c * inv_ones) / fc.delta;
        fc.w2 = (fc.a * inv_ones - fc.c * inv_means) / fc.delta;
    }
    return fc;
}

Eigen::VectorXd frontier_weights(const FrontierCoefficients& coeffs, double target_return) {
    if (coeffs.degenerate)
        throw DegeneracyError("frontier degenerate: all asset means equal");
    return target_return * coeffs.w1 + coeffs.w2;
}

Portfolio min_variance_portfolio(const FrontierCoefficients& coeffs) {
    Portfolio p;
    p.label = PortfolioLabel::mvp;
    if (coeffs.degenerate) {
        p.weights = coeffs.w2; // Σ⁻¹e / b regardless of the target
    } else {
        p.weights = frontier_weights(coeffs, coeffs.mvp_return());
    }
    return p;
}

Portfolio tangent_portfolio(const FrontierCoefficients& coeffs, double risk_free) {
    const double denom = coeffs.c - coeffs.b * risk_free;
    const double scale = std::abs(coeffs.c) + std::abs(coeffs.b * risk_free);
    if (std::abs(denom) <= 1e-12 * (1.0 + scale))
        throw DegeneracyError("tangency undefined: c - b*r_f vanishes");

    // Σ⁻¹(r̄ − r_f e) recovered from the coefficient decomposition:
    // w1·delta = b·Σ⁻¹r̄ − c·Σ⁻¹e and w2·delta = a·Σ⁻¹e − c·Σ⁻¹r̄.
    const Eigen::Index n = coeffs.means.size();
    Eigen::MatrixXd rhs(n, 1);
    rhs.col(0) = coeffs.means - Eigen::VectorXd::Constant(n, risk_free);
    const Eigen::VectorXd excess = solve_spd_system(coeffs.covariance, rhs).col(0);

    Portfolio p;
    p.label = PortfolioLabel::tvp;
    p.weights = excess / denom;
    return p;
}

std::vector<FrontierPoint> trace_frontier(const FrontierCoefficients& coeffs, int n_points,
                                          std::pair<double, double> return_range,
                                          double risk_free) {
    if (n_points < 2) throw ParameterError("trace_frontier needs n_points >= 2");
    if (!(return_range.first < return_range.second))
        throw ParameterError("trace_frontier needs lo < hi");
    if (coeffs.degenerate) throw DegeneracyError("frontier degenerate: all asset means equal");

    std::vector<FrontierPoint> points;
    points.reserve(static_cast<std::size_t>(n_points));
    const double lo = return_range.first;
    const double step = (return_range.second - lo) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        FrontierPoint pt;
        pt.target_return = lo + step * i;
        pt.weights = frontier_weights(coeffs, pt.target_return);
        pt.risk = std::sqrt(pt.weights.dot(coeffs.covariance * pt.weights));
        pt.sharpe_like = pt.risk > 0 ? (pt.target_return - risk_free) / pt.risk : 0.0;
        points.push_back(std::move(pt));
    }
    return points;
}

namespace {

// Minimum-variance QP under the constraint set; the short budget is
// enforced by cutting planes on the negative part, added only when
// violated. Each cut sum_{i in A} w_i >= -L is valid for the true region,
// so the final iterate is optimal for the full problem.
SolverSolution solve_constrained_min_variance(const Eigen::VectorXd& means,
                                              const Eigen::MatrixXd& covariance,
                                              std::optional<double> target_return,
                                              const ConstraintSet& constraints,
                                              const SolverConfig& cfg,
                                              const std::optional<Eigen::VectorXd>& warm_start) {
    const Eigen::Index n = means.size();

    QuadraticProgram qp;
    qp.hessian = covariance;
    qp.c = Eigen::VectorXd::Zero(n);
    const Eigen::Index n_eq = target_return ? 2 : 1;
    qp.eq_a = Eigen::MatrixXd::Ones(n_eq, n);
    qp.eq_b = Eigen::VectorXd::Zero(n_eq);
    qp.eq_b[0] = constraints.budget;
    if (target_return) {
        qp.eq_a.row(1) = means.transpose();
        qp.eq_b[1] = *target_return;
    }
    qp.lo = constraints.lo;
    qp.hi = constraints.hi;
    qp.in_a.resize(0, n);
    qp.in_b.resize(0);

    std::vector<std::vector<bool>> cuts;
    SolverSolution sol;
    for (int round = 0; round < 64; ++round) {
        sol = solve_qp(qp, cfg, warm_start);
        if (sol.status != SolveStatus::optimal) return sol;
        if (!constraints.short_budget) return sol;

        const double shorts = (-sol.x.array()).max(0.0).sum();
        if (shorts <= *constraints.short_budget + 10.0 * cfg.feasibility_tol) return sol;

        std::vector<bool> cut(static_cast<std::size_t>(n), false);
        for (Eigen::Index i = 0; i < n; ++i) cut[static_cast<std::size_t>(i)] = sol.x[i] < -1e-12;
        if (std::find(cuts.begin(), cuts.end(), cut) != cuts.end()) break; // numerical stall
        cuts.push_back(cut);

        qp.in_a.conservativeResize(qp.in_a.rows() + 1, n);
        qp.in_b.conservativeResize(qp.in_b.size() + 1);
        for (Eigen::Index i = 0; i < n; ++i)
            qp.in_a(qp.in_a.rows() - 1, i) = cut[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        qp.in_b[qp.in_b.size() - 1] = -*constraints.short_budget;
    }
    return sol;
}

} // namespace

Portfolio constrained_mv_portfolio(const Eigen::VectorXd& means, const Eigen::MatrixXd& covariance,
                                   std::optional<double> target_return,
                                   const ConstraintSet& constraints, const MvObjective& objective,
                                   const SolverConfig& cfg,
                                   const std::optional<Eigen::VectorXd>& warm_start) {
    if (constraints.assets() != means.size())
        throw ParameterError("constraint set dimension mismatch");

    Portfolio p;
    p.label = PortfolioLabel::custom;

    if (objective.kind == MvObjective::Kind::min_variance) {
        SolverSolution sol = solve_constrained_min_variance(means, covariance, target_return,
                                                            constraints, cfg, warm_start);
        if (sol.status == SolveStatus::infeasible)
            throw InfeasibleError("constraint set infeasible");
        if (sol.status != SolveStatus::optimal)
            throw Error("constrained optimization did not converge");
        p.weights = sol.x;
        return p;
    }

    // max_sharpe: scan a target-return grid and keep the best ratio.
    const double lo = means.minCoeff();
    const double hi = means.maxCoeff();
    const int n_grid = std::max(2, objective.sharpe_grid_points);
    bool found = false;
    double best_ratio = -kInf;
    Eigen::VectorXd best_w;
    std::optional<Eigen::VectorXd> warm = warm_start;
    for (int i = 0; i < n_grid; ++i) {
        const double target = lo + (hi - lo) * i / static_cast<double>(n_grid - 1);
        SolverSolution sol =
            solve_constrained_min_variance(means, covariance, target, constraints, cfg, warm);
        if (sol.status != SolveStatus::optimal) continue;
        warm = sol.x;
        const double sigma = std::sqrt(sol.x.dot(covariance * sol.x));
        if (!(sigma > 0)) continue;
        const double ratio = (means.dot(sol.x) - objective.risk_free) / sigma;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_w = sol.x;
            found = true;
        }
    }
    if (!found) throw InfeasibleError("no feasible frontier point in the target grid");
    p.weights = best_w;
    return p;
}

} // namespace folio
