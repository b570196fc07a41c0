#include "folio/cvar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "folio/stats.hpp"

namespace folio {

namespace {

// Robust ceil(alpha*T): immune to representation noise just above an integer.
Eigen::Index tail_count(double tail_prob, Eigen::Index t) {
    const double raw = tail_prob * static_cast<double>(t);
    return static_cast<Eigen::Index>(std::ceil(raw - 1e-9));
}

} // namespace

CvarEstimate empirical_var_cvar(const Eigen::VectorXd& losses, double confidence) {
    if (losses.size() == 0) throw ValidationError("empty loss vector");
    if (!(confidence >= 0.5 && confidence < 1.0))
        throw ParameterError("confidence must lie in [0.5, 1)");

    const Eigen::Index t = losses.size();
    const double alpha = 1.0 - confidence;
    const double mass = alpha * static_cast<double>(t);
    const Eigen::Index k = std::max<Eigen::Index>(tail_count(alpha, t), 1);
    if (k > t) throw ValidationError("tail larger than sample");

    std::vector<double> sorted(losses.data(), losses.data() + t);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    CvarEstimate est;
    est.confidence = confidence;
    est.tail_prob = alpha;
    est.var = sorted[static_cast<std::size_t>(k - 1)];

    double acc = 0.0;
    for (Eigen::Index i = 0; i < k - 1; ++i) acc += sorted[static_cast<std::size_t>(i)];
    acc += (mass - static_cast<double>(k - 1)) * est.var;
    est.cvar = acc / mass;
    // Guard against rounding pushing the average a hair under the threshold.
    if (est.cvar < est.var) est.cvar = est.var;
    return est;
}

namespace {

struct MasterSolution {
    Eigen::VectorXd w;
    double zeta = 0.0;
    double objective = 0.0;
    SolveStatus status = SolveStatus::optimal;
};

// Build and solve the master LP restricted to scenario set `rows`.
// Short-budget sets use the split form w = p - q, sum(q) <= L.
MasterSolution solve_master(const ScenarioMatrix& scenarios, double inv_mass,
                            const std::vector<Eigen::Index>& rows,
                            std::optional<double> target_return, const Eigen::VectorXd& means,
                            const ConstraintSet& cs, const SolverConfig& cfg) {
    const Eigen::Index n = scenarios.assets();
    const Eigen::Index s = static_cast<Eigen::Index>(rows.size());
    const bool split = cs.short_budget.has_value();
    const Eigen::Index nw = split ? 2 * n : n; // weight columns
    const Eigen::Index zeta_col = nw;
    const Eigen::Index u0 = nw + 1;
    const Eigen::Index slack0 = u0 + s;
    const Eigen::Index n_vars = slack0 + s + (split ? 1 : 0);

    const Eigen::Index n_struct = 1 + (target_return ? 1 : 0) + (split ? 1 : 0);
    const Eigen::Index m = n_struct + s;

    LinearProgram lp;
    lp.c = Eigen::VectorXd::Zero(n_vars);
    lp.c[zeta_col] = 1.0;
    for (Eigen::Index i = 0; i < s; ++i) lp.c[u0 + i] = inv_mass;

    lp.eq_a = Eigen::MatrixXd::Zero(m, n_vars);
    lp.eq_b = Eigen::VectorXd::Zero(m);
    lp.lo = Eigen::VectorXd::Zero(n_vars);
    lp.hi = Eigen::VectorXd::Constant(n_vars, kInf);
    lp.lo[zeta_col] = -kInf; // threshold variable is free

    Eigen::Index r = 0;
    // Budget row.
    for (Eigen::Index j = 0; j < n; ++j) {
        lp.eq_a(r, j) = 1.0;
        if (split) lp.eq_a(r, n + j) = -1.0;
    }
    lp.eq_b[r] = cs.budget;
    ++r;
    if (target_return) {
        for (Eigen::Index j = 0; j < n; ++j) {
            lp.eq_a(r, j) = means[j];
            if (split) lp.eq_a(r, n + j) = -means[j];
        }
        lp.eq_b[r] = *target_return;
        ++r;
    }
    if (split) {
        for (Eigen::Index j = 0; j < n; ++j) lp.eq_a(r, n + j) = 1.0;
        lp.eq_a(r, n_vars - 1) = 1.0; // short-budget slack
        lp.eq_b[r] = *cs.short_budget;
        ++r;
    }
    // Scenario rows: r_t·w + zeta + u_t - s_t = 0.
    for (Eigen::Index i = 0; i < s; ++i) {
        const Eigen::Index t = rows[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j) {
            lp.eq_a(r, j) = scenarios.returns(t, j);
            if (split) lp.eq_a(r, n + j) = -scenarios.returns(t, j);
        }
        lp.eq_a(r, zeta_col) = 1.0;
        lp.eq_a(r, u0 + i) = 1.0;
        lp.eq_a(r, slack0 + i) = -1.0;
        ++r;
    }

    // Weight bounds. In split form the parts carry the box; bounds already
    // implied by the budget and short-budget rows are left open so the
    // standard form does not grow an upper-bound row for them.
    if (split) {
        const double l = *cs.short_budget;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double p_cap = std::max(cs.hi[j], 0.0);
            lp.hi[j] = p_cap >= cs.budget + l - 1e-12 ? kInf : p_cap;
            const double q_cap = std::max(-cs.lo[j], 0.0);
            lp.hi[n + j] = q_cap >= l - 1e-12 ? kInf : q_cap;
            // Forced-long/forced-short assets push a floor onto one part.
            lp.lo[j] = std::max(cs.lo[j], 0.0);
            lp.lo[n + j] = std::max(-cs.hi[j], 0.0);
        }
    } else {
        const bool all_long = cs.lo.minCoeff() >= 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            lp.lo[j] = cs.lo[j];
            lp.hi[j] = all_long && cs.hi[j] >= cs.budget - 1e-12 ? kInf : cs.hi[j];
        }
    }

    SolverSolution sol = solve_lp(lp, cfg);
    MasterSolution ms;
    ms.status = sol.status;
    if (sol.status != SolveStatus::optimal) return ms;

    ms.w.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
        ms.w[j] = split ? sol.x[j] - sol.x[n + j] : sol.x[j];
    ms.zeta = sol.x[zeta_col];
    ms.objective = sol.objective_value;
    return ms;
}

} // namespace

CvarPortfolioResult min_cvar_portfolio(const ScenarioMatrix& scenarios, double confidence,
                                       std::optional<double> target_return,
                                       const ConstraintSet& constraints, const SolverConfig& cfg,
                                       const std::optional<Eigen::VectorXd>& warm_start) {
    const Eigen::Index t = scenarios.scenarios();
    const Eigen::Index n = scenarios.assets();
    if (t < 2) throw ValidationError("need at least 2 scenarios");
    if (constraints.assets() != n) throw ParameterError("constraint set dimension mismatch");
    if (!(confidence >= 0.5 && confidence < 1.0))
        throw ParameterError("confidence must lie in [0.5, 1)");

    const double alpha = 1.0 - confidence;
    const double mass = alpha * static_cast<double>(t);
    const double inv_mass = 1.0 / mass;
    const Eigen::Index k = std::max<Eigen::Index>(tail_count(alpha, t), 1);
    const Eigen::VectorXd means = sample_means(scenarios.returns);

    // Losses under the initial guess rank the seed scenario set.
    Eigen::VectorXd w0 = (warm_start && warm_start->size() == n)
                             ? *warm_start
                             : Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    const Eigen::VectorXd seed_losses = -(scenarios.returns * w0);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(t));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (seed_losses[a] != seed_losses[b]) return seed_losses[a] > seed_losses[b];
        return a < b;
    });

    const Eigen::Index seed_count = std::min<Eigen::Index>(t, k + std::max<Eigen::Index>(5, k / 4));
    std::vector<Eigen::Index> active(order.begin(), order.begin() + seed_count);
    std::sort(active.begin(), active.end());
    std::vector<char> in_active(static_cast<std::size_t>(t), 0);
    for (Eigen::Index i : active) in_active[static_cast<std::size_t>(i)] = 1;

    MasterSolution ms;
    constexpr double kGenTol = 1e-11;
    for (int round = 0; round < 200; ++round) {
        ms = solve_master(scenarios, inv_mass, active, target_return, means, constraints, cfg);
        if (ms.status == SolveStatus::infeasible)
            throw InfeasibleError("min-CVaR constraints infeasible");
        if (ms.status != SolveStatus::optimal)
            throw Error("min-CVaR master LP did not converge");

        // Any scenario whose loss exceeds the threshold needs its row.
        const Eigen::VectorXd losses = -(scenarios.returns * ms.w);
        std::vector<Eigen::Index> violated;
        for (Eigen::Index i = 0; i < t; ++i) {
            if (in_active[static_cast<std::size_t>(i)]) continue;
            if (losses[i] - ms.zeta > kGenTol) violated.push_back(i);
        }
        if (violated.empty()) break;

        std::sort(violated.begin(), violated.end(), [&](Eigen::Index a, Eigen::Index b) {
            if (losses[a] != losses[b]) return losses[a] > losses[b];
            return a < b;
        });
        const std::size_t take = std::min<std::size_t>(
            violated.size(), static_cast<std::size_t>(std::max<Eigen::Index>(k, 16)));
        for (std::size_t i = 0; i < take; ++i) {
            active.push_back(violated[i]);
            in_active[static_cast<std::size_t>(violated[i])] = 1;
        }
        std::sort(active.begin(), active.end());
    }

    CvarPortfolioResult out;
    out.portfolio.label = PortfolioLabel::custom;
    out.portfolio.weights = ms.w;
    out.cvar = ms.objective;
    out.var = ms.zeta;
    return out;
}

std::vector<FrontierPoint> trace_cvar_frontier(const ScenarioMatrix& scenarios, double confidence,
                                               int n_points,
                                               std::pair<double, double> return_range,
                                               const ConstraintSet& constraints, double risk_free,
                                               const SolverConfig& cfg) {
    if (n_points < 2) throw ParameterError("trace_cvar_frontier needs n_points >= 2");
    if (!(return_range.first <= return_range.second))
        throw ParameterError("trace_cvar_frontier needs lo <= hi");

    std::vector<FrontierPoint> points;
    points.reserve(static_cast<std::size_t>(n_points));
    std::optional<Eigen::VectorXd> warm;
    const double lo = return_range.first;
    const double step = (return_range.second - lo) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        FrontierPoint pt;
        pt.target_return = lo + step * i;
        try {
            CvarPortfolioResult res =
                min_cvar_portfolio(scenarios, confidence, pt.target_return, constraints, cfg, warm);
            pt.weights = res.portfolio.weights;
            pt.risk = res.cvar;
            pt.sharpe_like = res.cvar != 0.0 ? (pt.target_return - risk_free) / res.cvar : 0.0;
            pt.feasible = true;
            warm = res.portfolio.weights;
        } catch (const InfeasibleError&) {
            pt.feasible = false;
        }
        points.push_back(std::move(pt));
    }
    return points;
}

Portfolio tangent_cvar_portfolio(const ScenarioMatrix& scenarios, double confidence,
                                 double risk_free, const ConstraintSet& constraints,
                                 const CvarTangencyOptions& options, const SolverConfig& cfg) {
    const Eigen::VectorXd means = sample_means(scenarios.returns);
    const double lo = means.minCoeff();
    const double hi = means.maxCoeff();
    const int n_grid = hi > lo ? std::max(2, options.grid_points) : 1;

    bool any_feasible = false;
    bool any_positive_risk = false;
    double best_ratio = -kInf;
    Eigen::VectorXd best_w;
    std::optional<Eigen::VectorXd> warm;
    const Eigen::MatrixXd cov = scenarios.scenarios() >= 2
                                    ? sample_covariance(scenarios.returns)
                                    : Eigen::MatrixXd::Zero(scenarios.assets(), scenarios.assets());

    for (int i = 0; i < n_grid; ++i) {
        const double target =
            n_grid == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(n_grid - 1);
        CvarPortfolioResult res;
        try {
            res = min_cvar_portfolio(scenarios, confidence, target, constraints, cfg, warm);
        } catch (const InfeasibleError&) {
            continue;
        }
        any_feasible = true;
        warm = res.portfolio.weights;

        double risk = res.cvar;
        if (options.denominator == TangencyDenominator::sigma)
            risk = std::sqrt(res.portfolio.weights.dot(cov * res.portfolio.weights));
        if (!(risk > 0.0)) continue;
        any_positive_risk = true;
        const double ratio = (means.dot(res.portfolio.weights) - risk_free) / risk;
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_w = res.portfolio.weights;
        }
    }

    if (!any_feasible) throw InfeasibleError("no feasible frontier point in the target grid");
    if (!any_positive_risk)
        throw DegeneracyError("tangency undefined: every frontier point has zero risk");

    Portfolio p;
    p.label = PortfolioLabel::custom;
    p.weights = best_w;
    return p;
}

} // namespace folio
