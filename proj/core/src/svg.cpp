#include "folio/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "folio/errors.hpp"

namespace folio::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Rounded tick positions covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    if (!(hi > lo)) {
        const double pad = std::max(std::abs(lo), 1.0) * 0.5;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / std::max(target - 1, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    double t = std::ceil(lo / step) * step;
    for (; t <= hi + step * 1e-9; t += step) ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    return ticks;
}

struct Frame {
    double x0, x1, y0, y1;         // data ranges
    int left, right, top, bottom;  // pixel margins
    int width, height;

    double px(double x) const {
        return left + (x - x0) / (x1 - x0) * (width - left - right);
    }
    double py(double y) const {
        return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom);
    }
};

void open_document(std::ostringstream& out, const ChartOptions& opt) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n"
        << "<rect width=\"" << opt.width << "\" height=\"" << opt.height
        << "\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        out << "<text x=\"" << opt.width / 2
            << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\""
            << " font-weight=\"bold\">" << escape(opt.title) << "</text>\n";
}

void draw_axes(std::ostringstream& out, const Frame& f, const ChartOptions& opt,
               const std::vector<double>& xt, const std::vector<double>& yt) {
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double t : xt) {
        const double x = f.px(t);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << f.top << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << f.height - f.bottom << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << fmt(x) << "\" y=\"" << f.height - f.bottom + 16
            << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    }
    for (double t : yt) {
        const double y = f.py(t);
        out << "<line x1=\"" << f.left << "\" y1=\"" << fmt(y) << "\" x2=\""
            << f.width - f.right << "\" y2=\"" << fmt(y) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << f.left - 6 << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
    out << "</g>\n";
    out << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\""
        << f.width - f.left - f.right << "\" height=\"" << f.height - f.top - f.bottom
        << "\" fill=\"none\" stroke=\"#333\"/>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    if (!opt.x_label.empty())
        out << "<text x=\"" << (f.left + f.width - f.right) / 2 << "\" y=\"" << f.height - 8
            << "\" text-anchor=\"middle\">" << escape(opt.x_label) << "</text>\n";
    if (!opt.y_label.empty())
        out << "<text x=\"14\" y=\"" << (f.top + f.height - f.bottom) / 2
            << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
            << (f.top + f.height - f.bottom) / 2 << ")\">" << escape(opt.y_label) << "</text>\n";
    out << "</g>\n";
}

} // namespace

std::string line_chart(const std::vector<Series>& series, const ChartOptions& opt) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw ParameterError("series x/y size mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!std::isfinite(x0)) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) {
        const double pad = std::max(std::abs(y0), 1.0) * 0.1;
        y0 -= pad;
        y1 = y0 + 2 * pad;
    }
    const double ypad = (y1 - y0) * 0.06;
    y0 -= ypad;
    y1 += ypad;
    const double xpad = (x1 - x0) * 0.03;
    x0 -= xpad;
    x1 += xpad;

    Frame f{x0, x1, y0, y1, 64, 20, 36, 44, opt.width, opt.height};

    std::ostringstream out;
    open_document(out, opt);
    draw_axes(out, f, opt, nice_ticks(x0, x1), nice_ticks(y0, y1));

    int color_idx = 0;
    for (const auto& s : series) {
        const std::string color =
            s.color.empty() ? kPalette[color_idx % kPaletteSize] : s.color;
        ++color_idx;
        if (s.line && s.x.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
            if (s.dashed) out << " stroke-dasharray=\"6 4\"";
            out << " points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i) out << ' ';
                out << fmt(f.px(s.x[i])) << ',' << fmt(f.py(s.y[i]));
            }
            out << "\"/>\n";
        }
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                out << "<circle cx=\"" << fmt(f.px(s.x[i])) << "\" cy=\"" << fmt(f.py(s.y[i]))
                    << "\" r=\"3.2\" fill=\"" << color << "\"/>\n";
                if (s.label_points)
                    out << "<text x=\"" << fmt(f.px(s.x[i]) + 5) << "\" y=\""
                        << fmt(f.py(s.y[i]) - 4)
                        << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#333\">"
                        << escape(s.name) << "</text>\n";
            }
        }
    }

    if (opt.legend) {
        int ly = f.top + 10;
        color_idx = 0;
        for (const auto& s : series) {
            const std::string color =
                s.color.empty() ? kPalette[color_idx % kPaletteSize] : s.color;
            ++color_idx;
            if (s.name.empty() || s.label_points) continue;
            const int lx = f.width - f.right - 150;
            out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22
                << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
            if (s.dashed) out << " stroke-dasharray=\"6 4\"";
            out << "/>\n<text x=\"" << lx + 27 << "\" y=\"" << ly
                << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">"
                << escape(s.name) << "</text>\n";
            ly += 16;
        }
    }

    out << "</svg>\n";
    return out.str();
}

BoxStats box_stats(std::vector<double> values, const std::string& label) {
    if (values.empty()) throw ParameterError("box_stats needs at least one value");
    std::sort(values.begin(), values.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        if (i + 1 >= values.size()) return values.back();
        return values[i] * (1.0 - frac) + values[i + 1] * frac;
    };

    BoxStats b;
    b.label = label;
    b.q1 = quantile(0.25);
    b.median = quantile(0.5);
    b.q3 = quantile(0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.whisker_lo = b.q1;
    b.whisker_hi = b.q3;
    for (double v : values) {
        if (v < lo_fence || v > hi_fence) {
            b.outliers.push_back(v);
        } else {
            b.whisker_lo = std::min(b.whisker_lo, v);
            b.whisker_hi = std::max(b.whisker_hi, v);
        }
    }
    return b;
}

std::string box_plot(const std::vector<BoxStats>& boxes, const ChartOptions& opt) {
    if (boxes.empty()) throw ParameterError("box_plot needs at least one box");
    double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
    for (const auto& b : boxes) {
        y0 = std::min({y0, b.whisker_lo, b.q1});
        y1 = std::max({y1, b.whisker_hi, b.q3});
        for (double v : b.outliers) {
            y0 = std::min(y0, v);
            y1 = std::max(y1, v);
        }
    }
    if (y1 <= y0) {
        const double pad = std::max(std::abs(y0), 1.0) * 0.1;
        y0 -= pad;
        y1 += pad;
    }
    const double ypad = (y1 - y0) * 0.08;
    y0 -= ypad;
    y1 += ypad;

    Frame f{0.0, static_cast<double>(boxes.size()), y0, y1, 64, 20, 36, 44,
            opt.width, opt.height};

    std::ostringstream out;
    open_document(out, opt);
    draw_axes(out, f, opt, {}, nice_ticks(y0, y1));

    const double slot = (f.width - f.left - f.right) / static_cast<double>(boxes.size());
    const double half = slot * 0.28;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& b = boxes[i];
        const double cx = f.left + slot * (static_cast<double>(i) + 0.5);
        const std::string color = kPalette[i % kPaletteSize];
        out << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(f.py(b.whisker_lo)) << "\" x2=\""
            << fmt(cx) << "\" y2=\"" << fmt(f.py(b.whisker_hi))
            << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        for (double w : {b.whisker_lo, b.whisker_hi})
            out << "<line x1=\"" << fmt(cx - half * 0.6) << "\" y1=\"" << fmt(f.py(w))
                << "\" x2=\"" << fmt(cx + half * 0.6) << "\" y2=\"" << fmt(f.py(w))
                << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        out << "<rect x=\"" << fmt(cx - half) << "\" y=\"" << fmt(f.py(b.q3)) << "\" width=\""
            << fmt(2 * half) << "\" height=\"" << fmt(f.py(b.q1) - f.py(b.q3)) << "\" fill=\""
            << color << "\" fill-opacity=\"0.45\" stroke=\"#333\"/>\n";
        out << "<line x1=\"" << fmt(cx - half) << "\" y1=\"" << fmt(f.py(b.median)) << "\" x2=\""
            << fmt(cx + half) << "\" y2=\"" << fmt(f.py(b.median))
            << "\" stroke=\"#333\" stroke-width=\"1.8\"/>\n";
        for (double v : b.outliers)
            out << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(f.py(v))
                << "\" r=\"2.4\" fill=\"none\" stroke=\"#555\"/>\n";
        out << "<text x=\"" << fmt(cx) << "\" y=\"" << f.height - f.bottom + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\""
            << " fill=\"#333\">" << escape(b.label) << "</text>\n";
    }

    out << "</svg>\n";
    return out.str();
}

} // namespace folio::svg
