#pragma once

#include <optional>
#include <string>
#include <vector>

namespace twinbeam::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_error;  // optional; drawn as vertical bars
    bool markers = false;         // points instead of a polyline
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::optional<double> reference_y;  // dashed horizontal line
    std::vector<Series> series;
};

// Minimal standalone SVG line/scatter chart. Non-finite points are skipped.
std::string render_svg(const PlotSpec& plot);

}  // namespace twinbeam::cli
