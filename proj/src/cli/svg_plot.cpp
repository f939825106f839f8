#include "twinbeam/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace twinbeam::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return !(lo <= hi); }
    void pad() {
        if (empty()) {
            lo = 0.0;
            hi = 1.0;
        } else if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    auto tx = [&](double x) { return plot.log_x ? std::log10(x) : x; };
    auto usable_x = [&](double x) { return std::isfinite(x) && (!plot.log_x || x > 0.0); };

    Range xr, yr;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xr.include(tx(s.x[i]));
            const double e = i < s.y_error.size() && std::isfinite(s.y_error[i]) ? s.y_error[i] : 0.0;
            yr.include(s.y[i] - e);
            yr.include(s.y[i] + e);
        }
    }
    if (plot.reference_y) yr.include(*plot.reference_y);
    xr.pad();
    yr.pad();
    const double ypad = 0.05 * (yr.hi - yr.lo);
    yr.lo -= ypad;
    yr.hi += ypad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (tx(x) - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(plot.title) << "</text>\n"
        << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
        const double sx = kLeft + pw * i / 5.0;
        const double sy = kTop + ph - ph * i / 5.0;
        std::ostringstream xl;
        xl.precision(3);
        if (plot.log_x) {
            xl << "1e" << fx;
        } else {
            xl << fx;
        }
        svg << "<text x=\"" << sx << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">" << xl.str()
            << "</text>\n";
        svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
            << std::setprecision(3) << fy << std::setprecision(6) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 14 << "\" text-anchor=\"middle\">"
        << escape(plot.x_label) << "</text>\n"
        << "<text transform=\"translate(18," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(plot.y_label) << "</text>\n";

    if (plot.reference_y && *plot.reference_y >= yr.lo && *plot.reference_y <= yr.hi) {
        const double y = py(*plot.reference_y);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
            << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
    }

    std::size_t colour = 0;
    for (const auto& s : plot.series) {
        const char* c = kPalette[colour++ % std::size(kPalette)];
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) continue;
                const double x = px(s.x[i]);
                svg << "<circle cx=\"" << x << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\"" << c
                    << "\"/>\n";
                if (i < s.y_error.size() && std::isfinite(s.y_error[i]) && s.y_error[i] > 0.0) {
                    svg << "<line x1=\"" << x << "\" y1=\"" << py(s.y[i] - s.y_error[i]) << "\" x2=\"" << x
                        << "\" y2=\"" << py(s.y[i] + s.y_error[i]) << "\" stroke=\"" << c << "\"/>\n";
                }
            }
        } else {
            svg << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if (!usable_x(s.x[i]) || !std::isfinite(s.y[i])) continue;
                svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            }
            svg << "\"/>\n";
        }
        const double ly = kTop + 14.0 * static_cast<double>(colour);
        svg << "<rect x=\"" << kLeft + pw + 10 << "\" y=\"" << ly - 8 << "\" width=\"10\" height=\"10\" fill=\""
            << c << "\"/>\n"
            << "<text x=\"" << kLeft + pw + 26 << "\" y=\"" << ly + 1 << "\">" << escape(s.label)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace twinbeam::cli
