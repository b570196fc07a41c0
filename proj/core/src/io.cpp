#include "folio/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace folio {

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

void write_price_panel_csv(const std::string& path, const PricePanel& panel) {
    std::ostringstream out;
    out << "date";
    for (const auto& t : panel.tickers) out << ',' << t;
    out << '\n';
    for (Eigen::Index i = 0; i < panel.days(); ++i) {
        out << panel.dates[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < panel.assets(); ++j)
            out << ',' << format_double(panel.prices(i, j));
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_return_panel_csv(const std::string& path, const ReturnPanel& panel) {
    std::ostringstream out;
    out << "date";
    for (const auto& t : panel.tickers) out << ',' << t;
    out << '\n';
    for (Eigen::Index i = 0; i < panel.days(); ++i) {
        out << panel.dates[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < panel.assets(); ++j)
            out << ',' << format_double(panel.returns(i, j));
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_wealth_csv(const std::string& path, const WealthSeries& wealth) {
    std::ostringstream out;
    out << "date,wealth\n";
    for (Eigen::Index i = 0; i < wealth.wealth.size(); ++i)
        out << wealth.dates[static_cast<std::size_t>(i)] << ','
            << format_double(wealth.wealth[i]) << '\n';
    write_text_file(path, out.str());
}

WealthSeries read_wealth_csv(const std::string& path, double initial_wealth) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open wealth file: " + path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty file: " + path, 0);
    ++lineno;
    if (line.rfind("date,wealth", 0) != 0)
        throw ParseError("expected header 'date,wealth' in " + path, lineno);

    WealthSeries w;
    w.initial_wealth = initial_wealth;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("expected 2 fields", lineno);
        w.dates.push_back(line.substr(0, comma));
        try {
            values.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ParseError("unparsable wealth value", lineno);
        }
    }
    if (values.empty()) throw DataError("no wealth rows in " + path);
    w.wealth = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    return w;
}

void write_weight_path_csv(const std::string& path, const WeightPath& path_data) {
    std::ostringstream out;
    out << "date";
    for (const auto& t : path_data.tickers) out << ",w_" << t;
    out << '\n';
    for (Eigen::Index i = 0; i < path_data.days(); ++i) {
        out << path_data.dates[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < path_data.weights.cols(); ++j)
            out << ',' << format_double(path_data.weights(i, j));
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_frontier_csv(const std::string& path, const std::vector<FrontierPoint>& points,
                        const std::vector<std::string>& tickers) {
    std::ostringstream out;
    out << "target_return,risk,sharpe";
    for (const auto& t : tickers) out << ",w_" << t;
    out << '\n';
    for (const auto& pt : points) {
        if (!pt.feasible) continue;
        out << format_double(pt.target_return) << ',' << format_double(pt.risk) << ','
            << format_double(pt.sharpe_like);
        for (Eigen::Index j = 0; j < pt.weights.size(); ++j)
            out << ',' << format_double(pt.weights[j]);
        out << '\n';
    }
    write_text_file(path, out.str());
}

void write_ratio_samples_csv(const std::string& path, const std::vector<RatioSample>& samples) {
    std::ostringstream out;
    out << "metric,alpha,beta,window_start,window_end,value\n";
    for (const auto& s : samples)
        out << to_string(s.metric) << ',' << format_double(s.alpha) << ','
            << format_double(s.beta) << ',' << s.window_start << ',' << s.window_end << ','
            << format_double(s.value) << '\n';
    write_text_file(path, out.str());
}

void write_hill_csv(const std::string& path, const HillCurve& curve) {
    std::ostringstream out;
    out << "k,alpha_hat,ci_lower,ci_upper\n";
    for (std::size_t i = 0; i < curve.k_values.size(); ++i)
        out << curve.k_values[i] << ',' << format_double(curve.alpha_hat[i]) << ','
            << format_double(curve.ci_lower[i]) << ',' << format_double(curve.ci_upper[i])
            << '\n';
    write_text_file(path, out.str());
}

} // namespace folio
