#include "folio/riskmetrics.hpp"

#include <cmath>
#include <span>

#include "folio/cvar.hpp"
#include "folio/stats.hpp"

namespace folio {

std::string to_string(RatioMetric metric) {
    switch (metric) {
    case RatioMetric::sharpe: return "sharpe";
    case RatioMetric::rachev: return "rachev";
    case RatioMetric::starr: return "starr";
    }
    return "sharpe";
}

double sharpe_ratio(const Eigen::VectorXd& excess) {
    if (excess.size() < 2) throw ValidationError("sharpe_ratio needs at least 2 observations");
    const std::span<const double> xs(excess.data(), static_cast<std::size_t>(excess.size()));
    const double sd = sample_stdev(xs);
    // Constant samples can carry summation noise of order eps*|x|; treat
    // anything at that scale as zero variance.
    const double scale = excess.cwiseAbs().maxCoeff();
    if (!(sd > 1e-11 * scale)) throw UndefinedRatioError("sharpe_ratio: zero variance");
    return mean(xs) / sd;
}

double rachev_ratio(const Eigen::VectorXd& excess, double alpha_tail, double beta_tail) {
    if (excess.size() == 0) throw ValidationError("rachev_ratio: empty sample");
    if (!(alpha_tail > 0.0 && alpha_tail <= 0.5) || !(beta_tail > 0.0 && beta_tail <= 0.5))
        throw ParameterError("tail probabilities must lie in (0, 0.5]");

    // Expected tail gain: CVaR of the excess returns treated as the tail
    // statistic of interest (their largest values).
    const double gain = empirical_var_cvar(excess, 1.0 - beta_tail).cvar;
    // Expected tail loss: CVaR of the negated excess returns.
    const double loss = empirical_var_cvar((-excess).eval(), 1.0 - alpha_tail).cvar;
    if (!(loss > 0.0)) throw UndefinedRatioError("rachev_ratio: non-positive expected tail loss");
    return gain / loss;
}

double starr_ratio(const Eigen::VectorXd& excess, double alpha_tail) {
    if (excess.size() == 0) throw ValidationError("starr_ratio: empty sample");
    if (!(alpha_tail > 0.0 && alpha_tail <= 0.5))
        throw ParameterError("tail probability must lie in (0, 0.5]");

    const double loss = empirical_var_cvar((-excess).eval(), 1.0 - alpha_tail).cvar;
    if (!(loss > 0.0)) throw UndefinedRatioError("starr_ratio: non-positive expected tail loss");
    const std::span<const double> xs(excess.data(), static_cast<std::size_t>(excess.size()));
    return mean(xs) / loss;
}

RatioDistribution rolling_ratio_distribution(const BacktestResult& result,
                                             const RollingRatioSpec& spec) {
    const Eigen::Index d = result.excess_returns.size();
    if (spec.sub_window < 2) throw ParameterError("sub_window must be at least 2");
    if (spec.step < 1) throw ParameterError("step must be at least 1");
    if (d < spec.sub_window) throw ValidationError("backtest shorter than the sub-window");

    RatioDistribution dist;
    for (Eigen::Index start = 0; start + spec.sub_window <= d; start += spec.step) {
        const Eigen::VectorXd slice = result.excess_returns.segment(start, spec.sub_window);
        RatioSample sample;
        sample.metric = spec.metric;
        sample.window_start = result.wealth.dates[static_cast<std::size_t>(start)];
        sample.window_end =
            result.wealth.dates[static_cast<std::size_t>(start + spec.sub_window - 1)];
        try {
            switch (spec.metric) {
            case RatioMetric::sharpe: sample.value = sharpe_ratio(slice); break;
            case RatioMetric::rachev:
                sample.alpha = spec.alpha;
                sample.beta = spec.beta;
                sample.value = rachev_ratio(slice, spec.alpha, spec.beta);
                break;
            case RatioMetric::starr:
                sample.alpha = spec.alpha;
                sample.value = starr_ratio(slice, spec.alpha);
                break;
            }
        } catch (const UndefinedRatioError&) {
            ++dist.skipped;
            continue;
        }
        dist.samples.push_back(std::move(sample));
    }
    return dist;
}

} // namespace folio
