#pragma once

#include <string>
#include <vector>

#include "folio/backtest.hpp"
#include "folio/marketdata.hpp"
#include "folio/meanvar.hpp"
#include "folio/riskmetrics.hpp"
#include "folio/tailrisk.hpp"

namespace folio {

/// Deterministic shortest-ish decimal rendering used by every CSV writer.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

void write_price_panel_csv(const std::string& path, const PricePanel& panel);
void write_return_panel_csv(const std::string& path, const ReturnPanel& panel);

/// `date,wealth`
void write_wealth_csv(const std::string& path, const WealthSeries& wealth);
WealthSeries read_wealth_csv(const std::string& path, double initial_wealth);

/// `date,w_TICKER1,...`
void write_weight_path_csv(const std::string& path, const WeightPath& path_data);

/// `target_return,risk,sharpe,w_TICKER1,...` (risk = sigma or CVaR)
void write_frontier_csv(const std::string& path, const std::vector<FrontierPoint>& points,
                        const std::vector<std::string>& tickers);

/// `metric,alpha,beta,window_start,window_end,value`
void write_ratio_samples_csv(const std::string& path, const std::vector<RatioSample>& samples);

/// `k,alpha_hat,ci_lower,ci_upper`
void write_hill_csv(const std::string& path, const HillCurve& curve);

} // namespace folio
