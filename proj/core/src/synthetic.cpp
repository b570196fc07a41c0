#include "folio/synthetic.hpp"

#include <cmath>
#include <cstdio>

namespace folio {

std::uint64_t Rng::next() {
    // splitmix64: tiny, seedable, identical everywhere.
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double Rng::double_pareto(double alpha, double scale) {
    const double u = uniform();
    const double magnitude = scale * (std::pow(u, -1.0 / alpha) - 1.0);
    return (next() & 1ull) ? magnitude : -magnitude;
}

namespace {

// Howard Hinnant's civil-date algorithms.
long days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

void civil_from_days(long z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

} // namespace

std::vector<std::string> business_dates(const std::string& start, Eigen::Index count) {
    int y = 0;
    unsigned m = 0, d = 0;
    if (std::sscanf(start.c_str(), "%d-%u-%u", &y, &m, &d) != 3)
        throw ParameterError("start date must be ISO-8601: " + start);

    std::vector<std::string> dates;
    dates.reserve(static_cast<std::size_t>(count));
    long z = days_from_civil(y, m, d);
    while (static_cast<Eigen::Index>(dates.size()) < count) {
        // weekday: 0 = Monday ... 6 = Sunday (day 0 = 1970-01-01, a Thursday)
        const long wd = ((z % 7) + 10) % 7;
        if (wd < 5) {
            int yy;
            unsigned mm, dd;
            civil_from_days(z, yy, mm, dd);
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", yy, mm, dd);
            dates.emplace_back(buf);
        }
        ++z;
    }
    return dates;
}

SyntheticDataset make_synthetic_dataset(const SyntheticSpec& spec) {
    if (spec.days < 3) throw ParameterError("synthetic dataset needs at least 3 days");

    constexpr Eigen::Index n_gauss = 5;
    const Eigen::Index n = n_gauss + 1;
    const Eigen::Index t = spec.days;

    const double drifts[n_gauss] = {2.2e-4, 1.8e-4, 1.5e-4, 1.2e-4, 2.0e-4};
    const double vols[n_gauss] = {0.0035, 0.0040, 0.0045, 0.0050, 0.0038};

    // Equicorrelated Gaussian block: r = mu + sig*(sqrt(rho)*f + sqrt(1-rho)*e).
    const double rho = spec.gaussian_correlation;
    const double w_common = std::sqrt(rho);
    const double w_own = std::sqrt(1.0 - rho);

    Rng rng(spec.seed);
    Eigen::MatrixXd log_returns(t, n);
    for (Eigen::Index day = 0; day < t; ++day) {
        const double common = rng.normal();
        for (Eigen::Index j = 0; j < n_gauss; ++j) {
            const double shock = w_common * common + w_own * rng.normal();
            log_returns(day, j) = drifts[j] + vols[j] * shock;
        }
        // Heavy asset: mild Gaussian days punctuated by Pareto-sized crashes,
        // so its loss tail (and the EQW's) is genuinely power-law.
        double heavy = spec.heavy_drift + spec.heavy_base_vol * rng.normal();
        if (rng.uniform() < spec.heavy_crash_prob)
            heavy -= spec.heavy_crash_scale *
                     (std::pow(rng.uniform(), -1.0 / spec.heavy_tail_index) - 1.0);
        log_returns(day, n_gauss) = heavy;
    }

    SyntheticDataset data;
    data.prices.tickers = {"EQA", "EQB", "EQC", "EQD", "EQE", "HTX"};
    data.prices.dates = business_dates(spec.start_date, t + 1);
    data.prices.prices.resize(t + 1, n);
    const double base[6] = {100.0, 80.0, 60.0, 45.0, 120.0, 75.0};
    for (Eigen::Index j = 0; j < n; ++j) {
        double p = base[j];
        data.prices.prices(0, j) = p;
        for (Eigen::Index day = 0; day < t; ++day) {
            p *= std::exp(log_returns(day, j));
            data.prices.prices(day + 1, j) = p;
        }
    }

    data.benchmark.tickers = {"BMK"};
    data.benchmark.dates = data.prices.dates;
    data.benchmark.prices.resize(t + 1, 1);
    double b = 1000.0;
    data.benchmark.prices(0, 0) = b;
    for (Eigen::Index day = 0; day < t; ++day) {
        b *= std::exp(spec.benchmark_drift + spec.benchmark_vol * rng.normal());
        data.benchmark.prices(day + 1, 0) = b;
    }

    // Weekly annual-yield observations drifting around 2%.
    data.yields.dates.clear();
    for (Eigen::Index i = 0; i <= t; i += 5) {
        data.yields.dates.push_back(data.prices.dates[static_cast<std::size_t>(i)]);
        const double phase = 2.0 * M_PI * static_cast<double>(i) / 504.0;
        data.yields.annual_yield.push_back(0.020 + 0.005 * std::sin(phase));
    }
    return data;
}

} // namespace folio
