#pragma once

#include <functional>

#include "twinbeam/noise_model.hpp"

namespace twinbeam {

enum class Regime { saturated_at_unity, interior };

const char* to_string(Regime regime);

// Optimal channel-2 efficiency for a fixed channel 1.
struct OptimumReport {
    double eta2_opt = 1.0;
    Regime regime = Regime::saturated_at_unity;
    // Fano factor below which eta2 = 1 is optimal. +inf when the closed form
    // is singular, NaN when no closed form applies (numeric general case).
    double threshold = 0.0;
    double nrf_at_opt = 0.0;
};

// F' for noiseless twin beams. +inf at eta1 = 1.
double threshold_noiseless(double eta1);

// F'' for optical noise rho on channel 2 with F_rho - 1 = rho (F - 1), d = 0.
double threshold_noisy(double eta1, double rho);

OptimumReport optimal_eta2_noiseless(double eta1, double fano);

// Closed form assuming negligible detector noise and the source-linked
// optical-noise Fano factor (see linked_optical_fano).
OptimumReport optimal_eta2_noisy(double eta1, double fano, double rho);

// Minimizes nrf_full over eta2 in [0, 1]; noise.eta2 is ignored.
OptimumReport numeric_min_eta2(const TwinBeamSource& source, const ChannelNoiseModel& noise);
OptimumReport numeric_min_eta2(double fano, const ChannelNoiseModel& noise);

struct ScalarMinimum {
    double x = 0.0;
    double value = 0.0;
};

// Coarse grid over [0, 1] followed by golden-section refinement of the
// bracketing cells. Non-finite objective values are treated as +inf. For a
// flat objective the smallest grid point is returned.
ScalarMinimum minimize_on_unit_interval(const std::function<double(double)>& objective,
                                        double coarse_step = 1e-3, double tolerance = 1e-11);

}  // namespace twinbeam
