#pragma once

#include <string>
#include <vector>

namespace folio::svg {

/// One plotted series. Rendered as a polyline, as markers, or both.
struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::string color; // empty = palette color by index
    bool line = true;
    bool markers = false;
    bool dashed = false;
    bool label_points = false; // annotate each marker with the series name
};

struct ChartOptions {
    int width = 860;
    int height = 540;
    std::string title;
    std::string x_label;
    std::string y_label;
    bool legend = true;
};

/// Self-contained SVG document for line/scatter data.
std::string line_chart(const std::vector<Series>& series, const ChartOptions& opt);

/// Five-number summary for one box. Whiskers extend to the farthest
/// point within 1.5 IQR of the quartiles; the rest are outliers.
struct BoxStats {
    std::string label;
    double whisker_lo = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double whisker_hi = 0.0;
    std::vector<double> outliers;
};

BoxStats box_stats(std::vector<double> values, const std::string& label);

std::string box_plot(const std::vector<BoxStats>& boxes, const ChartOptions& opt);

} // namespace folio::svg
