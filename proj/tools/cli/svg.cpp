#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cshrink::cli {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(lo <= hi)) lo = 0.0, hi = 1.0;
        if (hi - lo < 1e-12) {
            const double pad = std::max(std::abs(lo) * 0.05, 0.5);
            lo -= pad;
            hi += pad;
        } else {
            const double pad = 0.05 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
    }
};

// Tick positions at a 1-2-5 step giving roughly five intervals.
std::vector<double> ticks(const Range& r) {
    const double raw = (r.hi - r.lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> out;
    for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-9 * step; t += step)
        out.push_back(std::abs(t) < 1e-9 * step ? 0.0 : t);
    return out;
}

// Draws `chart` into the box (x0, y0, w, h) of an enclosing document.
std::string draw(const Chart& chart, double x0, double y0, double w, double h) {
    const double left = x0 + 64, right = x0 + w - 16, top = y0 + 36, bottom = y0 + h - 48;

    Range xr, yr;
    for (const auto& s : chart.series)
        for (const auto& [x, y] : s.points) {
            xr.add(x);
            yr.add(y);
        }
    if (chart.zero_line) yr.add(0.0);
    xr.finish();
    yr.finish();
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * (right - left); };
    auto py = [&](double y) { return bottom - (y - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

    std::string out = "<g>\n";
    out += "<text x=\"" + num(x0 + w / 2) + "\" y=\"" + num(y0 + 20) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + escape(chart.title) + "</text>\n";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) +
           "\" height=\"" + num(bottom - top) + "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (double t : ticks(xr)) {
        out += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(px(t)) +
               "\" y2=\"" + num(bottom + 4) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + num(px(t)) + "\" y=\"" + num(bottom + 16) +
               "\" text-anchor=\"middle\" font-size=\"10\">" + label(t) + "</text>\n";
    }
    for (double t : ticks(yr)) {
        out += "<line x1=\"" + num(left - 4) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(left) +
               "\" y2=\"" + num(py(t)) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(t) + 3) +
               "\" text-anchor=\"end\" font-size=\"10\">" + label(t) + "</text>\n";
    }
    out += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(y0 + h - 12) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + escape(chart.x_label) + "</text>\n";
    out += "<text transform=\"translate(" + num(x0 + 16) + "," + num((top + bottom) / 2) +
           ") rotate(-90)\" text-anchor=\"middle\" font-size=\"12\">" + escape(chart.y_label) +
           "</text>\n";

    if (chart.zero_line)
        out += "<line class=\"zero\" x1=\"" + num(left) + "\" y1=\"" + num(py(0.0)) + "\" x2=\"" +
               num(right) + "\" y2=\"" + num(py(0.0)) +
               "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t i = 0; i < chart.series.size(); ++i) {
        const auto& s = chart.series[i];
        const char* color = kPalette[i % std::size(kPalette)];
        out += "<g class=\"series\" data-name=\"" + escape(s.name) + "\">\n";
        if (s.connect && s.points.size() > 1) {
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"";
            for (const auto& [x, y] : s.points) out += num(px(x)) + "," + num(py(y)) + " ";
            out += "\"/>\n";
        }
        for (const auto& [x, y] : s.points)
            out += "<circle class=\"point\" cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
                   "\" r=\"3\" fill=\"" + color + "\"/>\n";
        out += "</g>\n";
        if (chart.series.size() > 1) {
            const double ly = top + 14 + 16.0 * static_cast<double>(i);
            out += "<circle cx=\"" + num(right - 110) + "\" cy=\"" + num(ly - 4) + "\" r=\"4\" fill=\"" +
                   color + "\"/>\n";
            out += "<text x=\"" + num(right - 100) + "\" y=\"" + num(ly) + "\" font-size=\"11\">" +
                   escape(s.name) + "</text>\n";
        }
    }
    return out + "</g>\n";
}

std::string document(int width, int height, const std::string& body) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\" font-family=\"sans-serif\">\n" +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body + "</svg>\n";
}

}  // namespace

std::string render_svg(const Chart& chart, int width, int height) {
    return document(width, height, draw(chart, 0, 0, width, height));
}

std::string render_panels(const std::string& title, const std::vector<Chart>& panels, int columns,
                          int panel_width, int panel_height) {
    columns = std::max(columns, 1);
    const int rows = (static_cast<int>(panels.size()) + columns - 1) / columns;
    const int header = 32;
    const int width = columns * panel_width;
    const int height = header + rows * panel_height;
    std::string body = "<text x=\"" + std::to_string(width / 2) +
                       "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">" + escape(title) +
                       "</text>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const int r = static_cast<int>(i) / columns, c = static_cast<int>(i) % columns;
        body += draw(panels[i], c * panel_width, header + r * panel_height, panel_width, panel_height);
    }
    return document(width, height, body);
}

}  // namespace cshrink::cli
