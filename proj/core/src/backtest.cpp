#include "folio/backtest.hpp"

#include <cmath>
#include <unordered_map>

#include "folio/stats.hpp"

namespace folio {

namespace {

double confidence_for(PortfolioLabel label) {
    switch (label) {
    case PortfolioLabel::m95:
    case PortfolioLabel::t95: return 0.95;
    case PortfolioLabel::m99:
    case PortfolioLabel::t99: return 0.99;
    default: return 0.0;
    }
}

} // namespace

WeightPath rolling_optimize(const ReturnPanel& panel, PortfolioLabel label,
                            const StrategySpec& strategy, const RiskFreeSeries& risk_free,
                            const RollingConfig& cfg) {
    const Eigen::Index t = panel.days();
    const Eigen::Index n = panel.assets();
    const Eigen::Index window = cfg.window;
    if (label == PortfolioLabel::custom)
        throw ParameterError("rolling_optimize needs a concrete portfolio label");
    if (t <= window) throw ValidationError("panel shorter than the estimation window");
    if (window < n + 2) throw ValidationError("window must be at least assets + 2 days");
    if (risk_free.dates != panel.dates)
        throw DataError("risk-free series must be aligned to the panel dates");

    const ConstraintSet cs = build_constraints(strategy, n);
    const Eigen::Index out_days = t - window;

    WeightPath path;
    path.tickers = panel.tickers;
    path.label = label;
    path.strategy = strategy;
    path.window_length = window;
    path.weights.resize(out_days, n);
    path.dates.assign(panel.dates.begin() + window, panel.dates.end());

    std::optional<Eigen::VectorXd> previous;
    for (Eigen::Index d = 0; d < out_days; ++d) {
        const Eigen::Index day = window + d;
        const auto estimation = panel.returns.block(day - window, 0, window, n);
        const double rf_mean = risk_free.daily_rate.segment(day - window, window).mean();

        Eigen::VectorXd w;
        try {
            switch (label) {
            case PortfolioLabel::eqw:
                w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
                break;
            case PortfolioLabel::mvp: {
                const Eigen::VectorXd means = sample_means(estimation);
                const Eigen::MatrixXd cov = sample_covariance(estimation);
                w = constrained_mv_portfolio(means, cov, std::nullopt, cs,
                                             MvObjective::min_variance(), cfg.solver, previous)
                        .weights;
                break;
            }
            case PortfolioLabel::tvp: {
                const Eigen::VectorXd means = sample_means(estimation);
                const Eigen::MatrixXd cov = sample_covariance(estimation);
                w = constrained_mv_portfolio(means, cov, std::nullopt, cs,
                                             MvObjective::max_sharpe(rf_mean, cfg.tangent_grid),
                                             cfg.solver, previous)
                        .weights;
                break;
            }
            case PortfolioLabel::m95:
            case PortfolioLabel::m99: {
                ScenarioMatrix scen{estimation};
                w = min_cvar_portfolio(scen, confidence_for(label), std::nullopt, cs, cfg.solver,
                                       previous)
                        .portfolio.weights;
                break;
            }
            case PortfolioLabel::t95:
            case PortfolioLabel::t99: {
                ScenarioMatrix scen{estimation};
                CvarTangencyOptions opt;
                opt.grid_points = cfg.tangent_grid;
                opt.denominator = cfg.cvar_tangency;
                w = tangent_cvar_portfolio(scen, confidence_for(label), rf_mean, cs, opt,
                                           cfg.solver)
                        .weights;
                break;
            }
            case PortfolioLabel::custom: throw ParameterError("unreachable");
            }
        } catch (const Error&) {
            if (!previous) throw; // first window failures are fatal
            w = *previous;
            path.carried_forward.push_back(path.dates[static_cast<std::size_t>(d)]);
        }

        path.weights.row(d) = w.transpose();
        previous = w;
    }
    return path;
}

BacktestResult wealth_track(const WeightPath& path, const ReturnPanel& panel,
                            const RiskFreeSeries& risk_free, double initial_wealth) {
    if (panel.kind != ReturnKind::arithmetic)
        throw ValidationError("wealth tracking requires arithmetic returns");
    if (!(initial_wealth > 0.0)) throw ParameterError("initial_wealth must be positive");
    if (path.weights.cols() != panel.assets())
        throw DataError("weight path and panel have different asset counts");

    std::unordered_map<std::string, Eigen::Index> panel_row;
    panel_row.reserve(panel.dates.size());
    for (std::size_t i = 0; i < panel.dates.size(); ++i)
        panel_row.emplace(panel.dates[i], static_cast<Eigen::Index>(i));

    std::unordered_map<std::string, Eigen::Index> rf_row;
    rf_row.reserve(risk_free.dates.size());
    for (std::size_t i = 0; i < risk_free.dates.size(); ++i)
        rf_row.emplace(risk_free.dates[i], static_cast<Eigen::Index>(i));

    BacktestResult result;
    result.weight_path = path;
    result.wealth.dates = path.dates;
    result.wealth.initial_wealth = initial_wealth;
    result.wealth.wealth.resize(path.days());
    result.excess_returns.resize(path.days());

    double acc = initial_wealth;
    for (Eigen::Index d = 0; d < path.days(); ++d) {
        const std::string& date = path.dates[static_cast<std::size_t>(d)];
        const auto it = panel_row.find(date);
        if (it == panel_row.end()) throw DataError("weight date not present in panel: " + date);
        const auto rf_it = rf_row.find(date);
        if (rf_it == rf_row.end())
            throw DataError("weight date not present in risk-free series: " + date);

        // Contiguous copies keep the reduction order identical to the EQW
        // builder's, which the cross-module exact-equality contract needs.
        const Eigen::VectorXd w = path.weights.row(d).transpose();
        const Eigen::VectorXd r = panel.returns.row(it->second).transpose();
        const double ret = w.dot(r);
        acc *= 1.0 + ret;
        result.wealth.wealth[d] = acc;
        result.excess_returns[d] = ret - risk_free.daily_rate[rf_it->second];
    }
    return result;
}

} // namespace folio
