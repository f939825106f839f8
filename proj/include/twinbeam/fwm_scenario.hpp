#pragma once

#include <array>
#include <span>
#include <vector>

#include "twinbeam/noise_model.hpp"

namespace twinbeam {

// Stimulated four-wave-mixing source whose statistics depend on pump power p
// and a detector condition w (integration time, temperature, ...).
//
//   F(p)     = 1 + l1 p exp(l2 p)
//   F_rho(p) = 1 + l3 p
//   F_d(w)   = 1 + l4 + l5 w
//   rho(p)   = l6 exp(-l7 p)
//   d(p, w)  = (l8 w + l9) exp(-l10 p) / p
struct PumpScenario {
    std::array<double, 10> lambdas{};
    double w = 1.0;
    double eta1 = 0.75;
    double eta2 = 0.7;

    void validate() const;

    // lambda_i with the 1-based index used in the formulas above.
    double lambda(int index) const { return lambdas.at(static_cast<std::size_t>(index - 1)); }
    double& lambda(int index) { return lambdas.at(static_cast<std::size_t>(index - 1)); }

    // Published default parameter set with eta1 = 0.75, eta2 = 0.7, w = 1.
    static PumpScenario reference();
};

struct ScenarioParameters {
    double fano = 1.0;
    double fano_rho = 1.0;
    double fano_d = 1.0;
    double rho = 0.0;
    double d = 0.0;
};

ScenarioParameters scenario_at(double p, const PumpScenario& scenario);

struct PumpPoint {
    double p = 0.0;
    ScenarioParameters parameters;
    NrfBreakdown nrf;
};

// Optical noise on channel 2 and identical detector noise on both channels.
std::vector<PumpPoint> nrf_vs_pump(std::span<const double> p_grid, const PumpScenario& scenario);

}  // namespace twinbeam
