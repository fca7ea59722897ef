#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cshrink::cli {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool connect = true;  // draw a polyline through the points as well as markers
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    bool zero_line = false;
};

// Stand-alone SVG document for one chart.
std::string render_svg(const Chart& chart, int width = 640, int height = 400);

// Grid of charts in one document, filled row by row.
std::string render_panels(const std::string& title, const std::vector<Chart>& panels, int columns,
                          int panel_width = 420, int panel_height = 300);

}  // namespace cshrink::cli
