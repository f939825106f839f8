#include "twinbeam/grid.hpp"

#include <cmath>
#include <sstream>

#include "twinbeam/errors.hpp"

namespace twinbeam {

void GridSpec::validate() const {
    if (points == 0) throw ConfigError("grid.points", "grid must contain at least one point");
    if (!std::isfinite(min) || !std::isfinite(max)) {
        throw ConfigError("grid", "endpoints must be finite");
    }
    if (points > 1 && !(max > min)) throw ConfigError("grid", "max must exceed min");
    if (scale == GridScale::log && !(min > 0.0)) {
        throw ConfigError("grid.min", "log-scaled grid needs min > 0");
    }
}

std::vector<double> GridSpec::values() const {
    validate();
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = min;
        return out;
    }
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / last;
        if (scale == GridScale::linear) {
            out[i] = min + t * (max - min);
        } else {
            out[i] = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
        }
    }
    out.front() = min;
    out.back() = max;
    return out;
}

GridSpec GridSpec::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) {
        throw ConfigError("--grid", "expected min:max:points[:log|linear], got '" + text + "'");
    }
    GridSpec spec;
    try {
        spec.min = std::stod(parts[0]);
        spec.max = std::stod(parts[1]);
        const long long n = std::stoll(parts[2]);
        if (n <= 0) throw ConfigError("--grid", "points must be positive");
        spec.points = static_cast<std::size_t>(n);
    } catch (const std::logic_error&) {
        throw ConfigError("--grid", "could not parse numbers in '" + text + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            spec.scale = GridScale::log;
        } else if (parts[3] == "linear") {
            spec.scale = GridScale::linear;
        } else {
            throw ConfigError("--grid", "scale must be 'log' or 'linear'");
        }
    }
    spec.validate();
    return spec;
}

}  // namespace twinbeam
