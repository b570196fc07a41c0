#pragma once

#include <cstdint>
#include <string>

#include "folio/marketdata.hpp"

namespace folio {

/// Parameters of the bundled synthetic market: low-volatility correlated
/// Gaussian assets with modest positive drift, one deliberately dominant
/// heavy-tailed asset whose losses are Pareto-distributed crash jumps, a
/// thin-tailed benchmark index, and a slowly moving annual yield.
struct SyntheticSpec {
    Eigen::Index days = 1260;
    std::uint64_t seed = 74205;
    double gaussian_correlation = 0.35;
    double heavy_tail_index = 2.2;   // crash-size Pareto exponent
    double heavy_crash_prob = 0.12;  // per-day crash probability
    double heavy_crash_scale = 0.03; // crash magnitude scale
    double heavy_base_vol = 0.005;   // Gaussian part of the heavy asset
    double heavy_drift = 1.0e-4;     // before the crash drag
    double benchmark_drift = 2.0e-4;
    double benchmark_vol = 0.006;
    std::string start_date = "2019-01-01";
};

struct SyntheticDataset {
    PricePanel prices;    // tickers EQA..EQE plus HTX
    PricePanel benchmark; // single thin-tailed index BMK
    YieldSeries yields;
};

/// Deterministic across platforms: a fixed 64-bit generator drives
/// hand-rolled Box-Muller normal and inverse-CDF Pareto draws.
SyntheticDataset make_synthetic_dataset(const SyntheticSpec& spec = {});

/// Weekday (Mon-Fri) ISO dates starting at `start`, `count` of them.
std::vector<std::string> business_dates(const std::string& start, Eigen::Index count);

/// Deterministic RNG used by the generator and by seeded test fixtures.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next();
    double uniform();      // (0, 1]
    double normal();       // standard normal, Box-Muller
    /// Symmetric double-Pareto innovation: sign * scale * (U^(-1/alpha) - 1).
    double double_pareto(double alpha, double scale);

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace folio
