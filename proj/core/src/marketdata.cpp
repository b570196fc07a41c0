#include "folio/marketdata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace folio {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
    const std::string t = strip(s);
    if (t.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(t, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == t.size();
}

} // namespace

PricePanel load_price_panel(const std::string& path, const std::vector<std::string>& tickers) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open price file: " + path);

    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw ParseError("empty file: " + path, 0);
    ++lineno;
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = strip(h);
    if (header.empty() || header[0] != "date")
        throw ParseError("header must start with 'date' in " + path, lineno);
    if (header.size() < 2) throw ParseError("no ticker columns in " + path, lineno);

    std::vector<std::string> all_tickers(header.begin() + 1, header.end());
    std::vector<std::size_t> cols; // column index per requested ticker
    std::vector<std::string> want = tickers.empty() ? all_tickers : tickers;
    for (const auto& t : want) {
        auto it = std::find(all_tickers.begin(), all_tickers.end(), t);
        if (it == all_tickers.end())
            throw DataError("ticker not present in " + path + ": " + t);
        cols.push_back(static_cast<std::size_t>(it - all_tickers.begin()));
    }

    struct Row {
        std::string date;
        std::vector<double> values;
        bool complete;
    };
    std::vector<Row> rows;

    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        Row row;
        row.date = strip(fields[0]);
        if (row.date.empty()) throw ParseError("missing date", lineno);
        row.complete = true;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const std::string& cell = fields[cols[k] + 1];
            if (strip(cell).empty()) {
                row.complete = false;
                row.values.push_back(0.0);
                continue;
            }
            double v = 0.0;
            if (!parse_double(cell, v))
                throw ParseError("unparsable value '" + strip(cell) + "'", lineno);
            if (!(v > 0.0) || !std::isfinite(v))
                throw ValidationError("non-positive price for " + want[k] + " on " + row.date);
            row.values.push_back(v);
        }
        rows.push_back(std::move(row));
    }

    std::erase_if(rows, [](const Row& r) { return !r.complete; });
    if (rows.empty())
        throw DataError("no date has values for every requested ticker in " + path);

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date)
            throw ValidationError("duplicate date " + rows[i].date + " in " + path);

    PricePanel panel;
    panel.tickers = want;
    panel.prices.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(want.size()));
    panel.dates.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        panel.dates.push_back(rows[i].date);
        for (std::size_t k = 0; k < want.size(); ++k)
            panel.prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                rows[i].values[k];
    }
    return panel;
}

ReturnPanel compute_returns(const PricePanel& panel, ReturnKind kind) {
    const Eigen::Index t = panel.days();
    if (t < 2) throw ValidationError("need at least 2 price rows to compute returns");

    ReturnPanel out;
    out.tickers = panel.tickers;
    out.kind = kind;
    out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
    out.returns.resize(t - 1, panel.assets());
    for (Eigen::Index i = 1; i < t; ++i) {
        for (Eigen::Index j = 0; j < panel.assets(); ++j) {
            const double ratio = panel.prices(i, j) / panel.prices(i - 1, j);
            out.returns(i - 1, j) = kind == ReturnKind::log ? std::log(ratio) : ratio - 1.0;
        }
    }
    return out;
}

WealthSeries build_eqw_track(const ReturnPanel& panel, double initial_wealth) {
    if (panel.kind != ReturnKind::arithmetic)
        throw ValidationError("EQW wealth track requires arithmetic returns");
    if (!(initial_wealth > 0.0)) throw ParameterError("initial_wealth must be positive");

    WealthSeries w;
    w.dates = panel.dates;
    w.initial_wealth = initial_wealth;
    w.wealth.resize(panel.days());
    // Same dot-product arithmetic as the generic wealth tracker, so an
    // explicit 1/N weight path reproduces this series bit for bit.
    const Eigen::VectorXd eqw =
        Eigen::VectorXd::Constant(panel.assets(), 1.0 / static_cast<double>(panel.assets()));
    double acc = initial_wealth;
    for (Eigen::Index i = 0; i < panel.days(); ++i) {
        const Eigen::VectorXd row = panel.returns.row(i).transpose();
        acc *= 1.0 + eqw.dot(row);
        w.wealth[i] = acc;
    }
    return w;
}

YieldSeries load_yield_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open yield file: " + path);

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty file: " + path, 0);
    ++lineno;
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = strip(h);
    if (header.size() != 2 || header[0] != "date" || header[1] != "annual_yield")
        throw ParseError("expected header 'date,annual_yield' in " + path, lineno);

    YieldSeries ys;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 2) throw ParseError("expected 2 fields", lineno);
        double v = 0.0;
        if (!parse_double(fields[1], v)) throw ParseError("unparsable yield", lineno);
        if (!std::isfinite(v)) throw ValidationError("non-finite yield on " + strip(fields[0]));
        ys.dates.push_back(strip(fields[0]));
        ys.annual_yield.push_back(v);
    }
    if (ys.dates.empty()) throw DataError("no yield observations in " + path);
    for (std::size_t i = 1; i < ys.dates.size(); ++i)
        if (ys.dates[i] <= ys.dates[i - 1])
            throw ValidationError("yield dates must be strictly increasing in " + path);
    return ys;
}

RiskFreeSeries align_risk_free(const YieldSeries& yields, const std::vector<std::string>& dates,
                               RiskFreeTenor tenor) {
    RiskFreeSeries rf;
    rf.source_tenor = tenor;
    rf.dates = dates;
    rf.daily_rate.resize(static_cast<Eigen::Index>(dates.size()));

    for (std::size_t i = 0; i < dates.size(); ++i) {
        // Most recent observation on or before the target date.
        auto it = std::upper_bound(yields.dates.begin(), yields.dates.end(), dates[i]);
        if (it == yields.dates.begin())
            throw DataError("target date " + dates[i] + " precedes first yield observation");
        const std::size_t k = static_cast<std::size_t>(it - yields.dates.begin()) - 1;
        rf.daily_rate[static_cast<Eigen::Index>(i)] = yields.annual_yield[k] / 252.0;
    }
    return rf;
}

} // namespace folio
