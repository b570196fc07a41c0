#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "folio/backtest.hpp"
#include "folio/cvar.hpp"
#include "folio/io.hpp"
#include "folio/marketdata.hpp"
#include "folio/meanvar.hpp"
#include "folio/riskmetrics.hpp"
#include "folio/stats.hpp"
#include "folio/svg.hpp"
#include "folio/tailrisk.hpp"

namespace folio::cli {

namespace {

namespace fs = std::filesystem;

std::string level_tag(double level) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%g", level);
    return buf;
}

ReturnKind parse_return_kind(const std::string& s) {
    if (s == "log") return ReturnKind::log;
    if (s == "arith" || s == "arithmetic") return ReturnKind::arithmetic;
    throw ParameterError("unknown return kind: " + s + " (expected log|arith)");
}

StrategySpec parse_strategy(const std::string& s) {
    if (s.empty() || s == "long-only") return StrategySpec::long_only();
    if (s == "ls10") return StrategySpec::long_short(0.10);
    if (s == "ls20") return StrategySpec::long_short(0.20);
    if (s == "ls30") return StrategySpec::long_short(0.30);
    throw ParameterError("unknown strategy: " + s + " (expected long-only|ls10|ls20|ls30)");
}

std::vector<StrategySpec> strategies_for(const Options& o) {
    if (!o.strategy.empty()) return {parse_strategy(o.strategy)};
    return {StrategySpec::long_only(), StrategySpec::long_short(0.10),
            StrategySpec::long_short(0.20), StrategySpec::long_short(0.30)};
}

void validate_levels(const std::vector<double>& levels) {
    if (levels.empty()) throw ParameterError("at least one confidence level is required");
    for (double l : levels)
        if (!(l >= 0.5 && l < 1.0))
            throw ParameterError("confidence level must lie in [0.5, 1): " + level_tag(l));
}

RiskFreeTenor parse_tenor(const std::string& s) {
    if (s == "3m") return RiskFreeTenor::three_month;
    if (s == "1y") return RiskFreeTenor::one_year;
    throw ParameterError("unknown tenor: " + s + " (expected 3m|1y)");
}

struct LoadedMarket {
    PricePanel prices;
    ReturnPanel log_returns;
    ReturnPanel arith_returns;
    RiskFreeSeries riskfree; // aligned to the return dates
};

LoadedMarket load_market(const Options& o) {
    LoadedMarket m;
    m.prices = load_price_panel(o.data, o.tickers);
    m.log_returns = compute_returns(m.prices, ReturnKind::log);
    m.arith_returns = compute_returns(m.prices, ReturnKind::arithmetic);
    m.riskfree = align_risk_free(load_yield_series(o.riskfree), m.log_returns.dates,
                                 parse_tenor(o.tenor));
    return m;
}

const std::vector<PortfolioLabel> kOptimizedLabels = {
    PortfolioLabel::mvp, PortfolioLabel::tvp, PortfolioLabel::m95,
    PortfolioLabel::t95, PortfolioLabel::m99, PortfolioLabel::t99};


std::vector<PortfolioLabel> labels_for(const Options& o) {
    if (o.labels.empty()) return kOptimizedLabels;
    std::vector<PortfolioLabel> out;
    for (const auto& name : o.labels) {
        bool found = false;
        for (const auto label : kOptimizedLabels) {
            if (to_string(label) == name) {
                out.push_back(label);
                found = true;
                break;
            }
        }
        if (!found)
            throw ParameterError("unknown portfolio label: " + name +
                                 " (expected MVP|TVP|M95|T95|M99|T99)");
    }
    return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

svg::Series wealth_series(const std::string& name, const WealthSeries& w) {
    svg::Series s;
    s.name = name;
    s.x.resize(static_cast<std::size_t>(w.wealth.size()));
    for (std::size_t i = 0; i < s.x.size(); ++i) s.x[i] = static_cast<double>(i);
    s.y = to_std(w.wealth);
    return s;
}

// Frontier scatter/line figure shared by the mean-variance and CVaR paths.
std::string frontier_figure(const std::vector<FrontierPoint>& points,
                            const std::vector<double>& asset_risk,
                            const std::vector<double>& asset_mean,
                            const std::vector<std::string>& tickers, double eqw_risk,
                            double eqw_mean, double tangent_risk, double tangent_mean,
                            double risk_free, const std::string& title,
                            const std::string& x_label) {
    std::vector<svg::Series> series;

    svg::Series frontier;
    frontier.name = "frontier";
    for (const auto& pt : points) {
        if (!pt.feasible) continue;
        frontier.x.push_back(pt.risk);
        frontier.y.push_back(pt.target_return);
    }
    series.push_back(frontier);

    for (std::size_t j = 0; j < tickers.size(); ++j) {
        svg::Series a;
        a.name = tickers[j];
        a.x = {asset_risk[j]};
        a.y = {asset_mean[j]};
        a.line = false;
        a.markers = true;
        a.label_points = true;
        a.color = "#7f7f7f";
        series.push_back(a);
    }

    svg::Series eqw;
    eqw.name = "EQW";
    eqw.x = {eqw_risk};
    eqw.y = {eqw_mean};
    eqw.line = false;
    eqw.markers = true;
    eqw.label_points = true;
    eqw.color = "#2ca02c";
    series.push_back(eqw);

    svg::Series tangent;
    tangent.name = "tangent";
    tangent.x = {tangent_risk};
    tangent.y = {tangent_mean};
    tangent.line = false;
    tangent.markers = true;
    tangent.label_points = true;
    tangent.color = "#d62728";
    series.push_back(tangent);

    if (tangent_risk > 0) {
        // capital market line through (0, rf) and the tangent point
        const double slope = (tangent_mean - risk_free) / tangent_risk;
        const double x_max = std::max(tangent_risk, frontier.x.empty()
                                                        ? tangent_risk
                                                        : *std::max_element(frontier.x.begin(),
                                                                            frontier.x.end()));
        svg::Series cml;
        cml.name = "CML";
        cml.x = {0.0, x_max};
        cml.y = {risk_free, risk_free + slope * x_max};
        cml.dashed = true;
        cml.color = "#d62728";
        series.push_back(cml);
    }

    svg::ChartOptions opt;
    opt.title = title;
    opt.x_label = x_label;
    opt.y_label = "mean daily return";
    return svg::line_chart(series, opt);
}

} // namespace

int cmd_ingest(const Options& o) {
    const ReturnKind kind = parse_return_kind(o.returns);
    const LoadedMarket m = load_market(o);
    const WealthSeries eqw = build_eqw_track(m.arith_returns, o.initial);

    fs::create_directories(o.out);
    write_price_panel_csv(o.out + "/prices_aligned.csv", m.prices);
    write_return_panel_csv(o.out + (kind == ReturnKind::log ? "/returns_log.csv"
                                                            : "/returns_arith.csv"),
                           kind == ReturnKind::log ? m.log_returns : m.arith_returns);
    write_wealth_csv(o.out + "/eqw_wealth.csv", eqw);

    std::cout << "ingested " << m.prices.days() << " dates x " << m.prices.assets()
              << " tickers (" << m.prices.dates.front() << " .. " << m.prices.dates.back()
              << ")\n";
    return 0;
}

int cmd_frontier(const Options& o) {
    validate_levels(o.levels);
    if (o.points < 2) throw ParameterError("--points must be at least 2");
    const LoadedMarket m = load_market(o);

    const Eigen::Index t = m.log_returns.days();
    const Eigen::Index window = std::min<Eigen::Index>(o.window, t);
    if (window < m.log_returns.assets() + 2)
        throw ValidationError("not enough history for the estimation window");
    const Eigen::MatrixXd est = m.log_returns.returns.bottomRows(window);
    const double rf_mean = m.riskfree.daily_rate.tail(window).mean();

    const Eigen::VectorXd means = sample_means(est);
    const Eigen::MatrixXd cov = sample_covariance(est);
    const Eigen::Index n = means.size();
    const std::pair<double, double> range{means.minCoeff(), means.maxCoeff()};

    // Mean-variance frontier, tangent and per-asset points.
    const FrontierCoefficients fc = frontier_coefficients(means, cov);
    const auto mv_points = trace_frontier(fc, o.points, range, rf_mean);
    const Portfolio tangent = tangent_portfolio(fc, rf_mean);
    const double tangent_sigma = std::sqrt(tangent.weights.dot(cov * tangent.weights));
    const double tangent_mean = means.dot(tangent.weights);

    const Eigen::VectorXd eqw_w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    const double eqw_sigma = std::sqrt(eqw_w.dot(cov * eqw_w));
    const double eqw_mean = means.mean();

    std::vector<double> asset_sigma(static_cast<std::size_t>(n));
    std::vector<double> asset_mean(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        asset_sigma[static_cast<std::size_t>(j)] = std::sqrt(cov(j, j));
        asset_mean[static_cast<std::size_t>(j)] = means[j];
    }

    // CVaR frontiers per level under the requested strategy.
    const ConstraintSet cs = build_constraints(parse_strategy(o.strategy), n);
    const ScenarioMatrix scen{est};
    CvarTangencyOptions topt;
    topt.grid_points = o.tangent_grid;
    topt.denominator = o.tangency_sigma ? TangencyDenominator::sigma : TangencyDenominator::cvar;

    struct CvarOut {
        double level;
        std::vector<FrontierPoint> points;
        Eigen::VectorXd tangent_w;
        std::vector<double> asset_cvar;
        double eqw_cvar;
    };
    std::vector<CvarOut> cvar_outs;
    for (double level : o.levels) {
        CvarOut out;
        out.level = level;
        out.points = trace_cvar_frontier(scen, level, o.points, range, cs, rf_mean);
        const long skipped =
            std::count_if(out.points.begin(), out.points.end(),
                          [](const FrontierPoint& p) { return !p.feasible; });
        if (skipped > 0)
            std::cerr << "warning: " << skipped << " infeasible target(s) skipped on the "
                      << level_tag(level) << " CVaR frontier\n";
        out.tangent_w = tangent_cvar_portfolio(scen, level, rf_mean, cs, topt).weights;
        for (Eigen::Index j = 0; j < n; ++j)
            out.asset_cvar.push_back(empirical_var_cvar((-est.col(j)).eval(), level).cvar);
        out.eqw_cvar = empirical_var_cvar((-(est * eqw_w)).eval(), level).cvar;
        cvar_outs.push_back(std::move(out));
    }

    // All computation done; write outputs.
    fs::create_directories(o.out);
    write_frontier_csv(o.out + "/frontier_mv.csv", mv_points, m.prices.tickers);
    write_text_file(o.out + "/frontier_mv.svg",
                    frontier_figure(mv_points, asset_sigma, asset_mean, m.prices.tickers,
                                    eqw_sigma, eqw_mean, tangent_sigma, tangent_mean, rf_mean,
                                    "Mean-variance efficient frontier",
                                    "daily standard deviation"));

    for (const auto& out : cvar_outs) {
        const std::string tag = level_tag(out.level);
        write_frontier_csv(o.out + "/frontier_cvar_" + tag + ".csv", out.points,
                           m.prices.tickers);
        const Eigen::VectorXd losses = -(est * out.tangent_w);
        const double tcvar = empirical_var_cvar(losses, out.level).cvar;
        const double tmean = means.dot(out.tangent_w);
        write_text_file(o.out + "/frontier_cvar_" + tag + ".svg",
                        frontier_figure(out.points, out.asset_cvar, asset_mean,
                                        m.prices.tickers, out.eqw_cvar, eqw_mean, tcvar, tmean,
                                        rf_mean, "CVaR efficient frontier (" + tag + ")",
                                        "daily CVaR"));
    }

    std::cout << "frontier: " << mv_points.size() << " mean-variance points, "
              << cvar_outs.size() << " CVaR level(s)\n";
    return 0;
}

int cmd_backtest(const Options& o) {
    const LoadedMarket m = load_market(o);
    if (o.window < m.log_returns.assets() + 2) throw ParameterError("--window too small");

    RollingConfig cfg;
    cfg.window = o.window;
    cfg.tangent_grid = o.rolling_tangent_grid;
    cfg.cvar_tangency =
        o.tangency_sigma ? TangencyDenominator::sigma : TangencyDenominator::cvar;

    struct Track {
        PortfolioLabel label;
        StrategySpec strategy;
        BacktestResult result;
    };
    std::vector<Track> tracks;
    std::size_t carried = 0;
    const std::vector<PortfolioLabel> labels = labels_for(o);
    for (const auto& strat : strategies_for(o)) {
        for (const auto label : labels) {
            const WeightPath path = rolling_optimize(m.log_returns, label, strat, m.riskfree, cfg);
            carried += path.carried_forward.size();
            tracks.push_back(
                {label, strat, wealth_track(path, m.arith_returns, m.riskfree, o.initial)});
        }
        const WeightPath eqw_path =
            rolling_optimize(m.log_returns, PortfolioLabel::eqw, strat, m.riskfree, cfg);
        tracks.push_back({PortfolioLabel::eqw, strat,
                          wealth_track(eqw_path, m.arith_returns, m.riskfree, o.initial)});
    }

    fs::create_directories(o.out);
    for (const auto& tr : tracks) {
        const std::string base = to_string(tr.label) + "_" + tr.strategy.name();
        write_wealth_csv(o.out + "/wealth_" + base + ".csv", tr.result.wealth);
        write_weight_path_csv(o.out + "/weights_" + base + ".csv", tr.result.weight_path);
    }
    for (const auto& strat : strategies_for(o)) {
        std::vector<svg::Series> series;
        for (const auto& tr : tracks) {
            if (tr.strategy.name() != strat.name()) continue;
            series.push_back(wealth_series(to_string(tr.label), tr.result.wealth));
        }
        svg::ChartOptions opt;
        opt.title = "Cumulative wealth, " + strat.name() + " (initial " +
                    format_double(o.initial) + ")";
        opt.x_label = "trading day";
        opt.y_label = "wealth";
        write_text_file(o.out + "/backtest_" + strat.name() + ".svg",
                        svg::line_chart(series, opt));
    }

    if (carried > 0)
        std::cerr << "warning: " << carried
                  << " window(s) re-used the previous day's weights after solver failures\n";
    std::cout << "backtest: " << tracks.size() << " tracks, "
              << (tracks.empty() ? 0 : tracks.front().result.wealth.wealth.size())
              << " out-of-sample days each\n";
    return 0;
}

int cmd_metrics(const Options& o) {
    validate_levels(o.levels);
    const YieldSeries yields = load_yield_series(o.riskfree);

    struct MetricsOut {
        std::string base;
        std::vector<RatioSample> samples;
        std::map<std::string, std::vector<double>> by_plot; // plot key -> values
    };

    std::vector<std::string> labels;
    for (const auto label : labels_for(o)) labels.push_back(to_string(label));
    labels.push_back("EQW");

    // plot key -> (label -> sample values)
    std::map<std::string, std::map<std::string, std::vector<double>>> plots;
    std::vector<MetricsOut> outputs;
    int total_skipped = 0;

    for (const auto& strat : strategies_for(o)) {
        for (const auto& label : labels) {
            const std::string base = label + "_" + strat.name();
            const std::string path = o.out + "/wealth_" + base + ".csv";
            if (!fs::exists(path))
                throw DataError("missing " + path + "; run the backtest command first");
            const WealthSeries wealth = read_wealth_csv(path, o.initial);

            BacktestResult result;
            result.wealth = wealth;
            result.excess_returns.resize(wealth.wealth.size());
            const RiskFreeSeries rf = align_risk_free(yields, wealth.dates);
            double prev = wealth.initial_wealth;
            for (Eigen::Index i = 0; i < wealth.wealth.size(); ++i) {
                result.excess_returns[i] = wealth.wealth[i] / prev - 1.0 - rf.daily_rate[i];
                prev = wealth.wealth[i];
            }

            MetricsOut out;
            out.base = base;
            RollingRatioSpec spec;
            spec.sub_window = o.sub_window;
            spec.step = o.step;

            spec.metric = RatioMetric::sharpe;
            RatioDistribution dist = rolling_ratio_distribution(result, spec);
            total_skipped += dist.skipped;
            for (const auto& s : dist.samples) {
                plots["sharpe_" + strat.name()][label].push_back(s.value);
                out.samples.push_back(s);
            }
            for (double level : o.levels) {
                const std::string tag = level_tag(level);
                spec.alpha = 1.0 - level;
                spec.beta = 1.0 - level;
                for (const auto metric : {RatioMetric::rachev, RatioMetric::starr}) {
                    spec.metric = metric;
                    dist = rolling_ratio_distribution(result, spec);
                    total_skipped += dist.skipped;
                    for (const auto& s : dist.samples) {
                        plots[to_string(metric) + "_" + tag + "_" + strat.name()][label]
                            .push_back(s.value);
                        out.samples.push_back(s);
                    }
                }
            }
            outputs.push_back(std::move(out));
        }
    }

    fs::create_directories(o.out);
    for (const auto& out : outputs)
        write_ratio_samples_csv(o.out + "/ratios_" + out.base + ".csv", out.samples);
    for (const auto& [key, by_label] : plots) {
        std::vector<svg::BoxStats> boxes;
        for (const auto& label : labels) {
            const auto it = by_label.find(label);
            if (it == by_label.end() || it->second.empty()) continue;
            boxes.push_back(svg::box_stats(it->second, label));
        }
        if (boxes.empty()) continue;
        svg::ChartOptions opt;
        opt.title = key;
        opt.y_label = "ratio";
        write_text_file(o.out + "/boxplot_" + key + ".svg", svg::box_plot(boxes, opt));
    }

    if (total_skipped > 0)
        std::cerr << "warning: " << total_skipped << " undefined ratio window(s) skipped\n";
    std::cout << "metrics: " << outputs.size() << " tracks, " << plots.size()
              << " boxplot group(s)\n";
    return 0;
}

int cmd_hill(const Options& o) {
    validate_levels(o.levels);
    const double level = o.levels.front();
    const TailSide tail = o.tail == "upper" ? TailSide::upper : TailSide::lower;
    if (o.tail != "upper" && o.tail != "lower")
        throw ParameterError("unknown tail: " + o.tail + " (expected lower|upper)");
    const ReturnKind kind = parse_return_kind(o.returns);

    struct SeriesIn {
        std::string name;
        Eigen::VectorXd returns;
    };
    std::vector<SeriesIn> inputs;

    const PricePanel prices = load_price_panel(o.data, o.tickers);
    const ReturnPanel rp = compute_returns(prices, kind);
    for (Eigen::Index j = 0; j < rp.assets(); ++j)
        inputs.push_back({rp.tickers[static_cast<std::size_t>(j)], rp.returns.col(j)});

    // EQW series from the arithmetic track, mapped to the requested kind.
    const ReturnPanel arith = compute_returns(prices, ReturnKind::arithmetic);
    Eigen::VectorXd eqw = arith.returns.rowwise().mean();
    if (kind == ReturnKind::log) eqw = (eqw.array() + 1.0).log();
    inputs.push_back({"EQW", eqw});

    if (!o.benchmark.empty()) {
        const PricePanel bench = load_price_panel(o.benchmark);
        const ReturnPanel brp = compute_returns(bench, kind);
        for (Eigen::Index j = 0; j < brp.assets(); ++j)
            inputs.push_back({brp.tickers[static_cast<std::size_t>(j)], brp.returns.col(j)});
    }

    struct HillOut {
        std::string name;
        HillCurve curve;
    };
    std::vector<HillOut> outs;
    for (const auto& in : inputs) {
        const Eigen::VectorXd transformed = tail == TailSide::lower ? (-in.returns).eval()
                                                                    : in.returns;
        Eigen::Index tail_size = 0;
        for (Eigen::Index i = 0; i < transformed.size(); ++i)
            if (transformed[i] > 0.0) ++tail_size;
        if (tail_size < 2) throw ValidationError("series " + in.name + " has an empty tail");

        auto range = default_k_range(tail_size);
        if (o.k_min > 0) range.first = o.k_min;
        if (o.k_max > 0) range.second = o.k_max;
        outs.push_back({in.name, hill_curve(in.returns, tail, range, level)});
    }

    fs::create_directories(o.out);
    for (const auto& out : outs) {
        write_hill_csv(o.out + "/hill_" + out.name + ".csv", out.curve);

        std::vector<double> ks;
        for (const auto k : out.curve.k_values) ks.push_back(static_cast<double>(k));
        svg::Series est{.name = "alpha_hat", .x = ks, .y = out.curve.alpha_hat};
        svg::Series lo{.name = "ci_lower", .x = ks, .y = out.curve.ci_lower};
        svg::Series hi{.name = "ci_upper", .x = ks, .y = out.curve.ci_upper};
        lo.dashed = true;
        hi.dashed = true;
        lo.color = "#7f7f7f";
        hi.color = "#7f7f7f";
        svg::ChartOptions opt;
        opt.title = "Hill plot, " + out.name + " (" + (tail == TailSide::lower ? "lower" : "upper") +
                    " tail, " + level_tag(level) + " band)";
        opt.x_label = "order statistics k";
        opt.y_label = "tail index";
        write_text_file(o.out + "/hill_" + out.name + ".svg",
                        svg::line_chart({est, lo, hi}, opt));
    }

    std::cout << "hill: " << outs.size() << " series\n";
    return 0;
}

} // namespace folio::cli
