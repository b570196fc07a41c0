#include "folio/tailrisk.hpp"

#include <algorithm>
#include <cmath>

#include "folio/stats.hpp"

namespace folio {

namespace {

// Strictly positive values, descending.
std::vector<double> positive_sorted_desc(const Eigen::VectorXd& sample) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(sample.size()));
    for (Eigen::Index i = 0; i < sample.size(); ++i)
        if (sample[i] > 0.0 && std::isfinite(sample[i])) xs.push_back(sample[i]);
    std::stable_sort(xs.begin(), xs.end(), std::greater<>());
    return xs;
}

double hill_from_sorted(const std::vector<double>& xs, Eigen::Index k) {
    if (k < 1) throw ParameterError("hill estimate needs k >= 1");
    if (static_cast<Eigen::Index>(xs.size()) < k + 1)
        throw InsufficientTailError("fewer than k+1 positive tail values");
    const double threshold = xs[static_cast<std::size_t>(k)];
    if (xs[0] == threshold)
        throw DegeneracyError("hill estimate degenerate: top k+1 order statistics tied");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        acc += std::log(xs[static_cast<std::size_t>(i)] / threshold);
    return static_cast<double>(k) / acc;
}

} // namespace

double hill_estimate(const Eigen::VectorXd& sample, Eigen::Index k) {
    return hill_from_sorted(positive_sorted_desc(sample), k);
}

std::pair<Eigen::Index, Eigen::Index> default_k_range(Eigen::Index tail_size) {
    const Eigen::Index hi = std::max<Eigen::Index>(tail_size / 10, 1);
    const Eigen::Index lo = std::min<Eigen::Index>(10, hi);
    return {lo, hi};
}

HillCurve hill_curve(const Eigen::VectorXd& returns, TailSide tail,
                     std::pair<Eigen::Index, Eigen::Index> k_range, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw ParameterError("confidence must lie in (0,1)");

    const Eigen::VectorXd transformed = tail == TailSide::lower ? (-returns).eval() : returns;
    const std::vector<double> xs = positive_sorted_desc(transformed);
    if (xs.empty()) throw InsufficientTailError("empty tail after transformation");

    const auto [k_min, k_max] = k_range;
    if (k_min < 1 || k_min > k_max) throw ParameterError("invalid k range");
    if (k_max + 1 > static_cast<Eigen::Index>(xs.size()))
        throw ParameterError("k_max exceeds available tail size");

    const double z = normal_quantile(0.5 + confidence / 2.0);

    HillCurve curve;
    curve.tail = tail;
    curve.n = static_cast<Eigen::Index>(xs.size());
    curve.k_values.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (Eigen::Index k = k_min; k <= k_max; ++k) {
        const double a = hill_from_sorted(xs, k);
        const double half = z / std::sqrt(static_cast<double>(k));
        curve.k_values.push_back(k);
        curve.alpha_hat.push_back(a);
        curve.ci_lower.push_back(a * (1.0 - half));
        curve.ci_upper.push_back(a * (1.0 + half));
    }
    return curve;
}

} // namespace folio
