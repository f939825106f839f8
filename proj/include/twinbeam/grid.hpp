#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace twinbeam {

enum class GridScale { linear, log };

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    std::size_t points = 2;
    GridScale scale = GridScale::linear;

    // Endpoints are reproduced exactly; a single point yields {min}.
    std::vector<double> values() const;
    void validate() const;

    // "min:max:points[:log|linear]"
    static GridSpec parse(const std::string& text);
};

}  // namespace twinbeam
