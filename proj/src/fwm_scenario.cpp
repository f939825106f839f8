#include "twinbeam/fwm_scenario.hpp"

#include <cmath>
#include <string>

#include "twinbeam/errors.hpp"

namespace twinbeam {

void PumpScenario::validate() const {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 0.0) || !std::isfinite(lambdas[i])) {
            throw DomainError("lambda" + std::to_string(i + 1) + " must be finite and >= 0");
        }
    }
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("w must be finite and >= 0");
    if (!(eta1 >= 0.0 && eta1 <= 1.0)) throw DomainError("eta1 must lie in [0, 1]");
    if (!(eta2 >= 0.0 && eta2 <= 1.0)) throw DomainError("eta2 must lie in [0, 1]");
}

PumpScenario PumpScenario::reference() {
    PumpScenario s;
    s.lambdas = {0.00005, 0.01, 0.01, 0.5, 0.1, 1.0, 0.005, 1.001, 0.0, 0.005};
    s.w = 1.0;
    s.eta1 = 0.75;
    s.eta2 = 0.7;
    return s;
}

ScenarioParameters scenario_at(double p, const PumpScenario& scenario) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw DomainError("pump power must be finite and > 0, got " + std::to_string(p));
    }
    scenario.validate();
    const auto& l = scenario.lambdas;
    ScenarioParameters out;
    out.fano = 1.0 + l[0] * p * std::exp(l[1] * p);
    out.fano_rho = 1.0 + l[2] * p;
    out.fano_d = 1.0 + l[3] + l[4] * scenario.w;
    out.rho = l[5] * std::exp(-l[6] * p);
    out.d = (l[7] * scenario.w + l[8]) / p * std::exp(-l[9] * p);
    return out;
}

std::vector<PumpPoint> nrf_vs_pump(std::span<const double> p_grid, const PumpScenario& scenario) {
    if (p_grid.empty()) throw DomainError("pump grid must not be empty");
    scenario.validate();
    std::vector<PumpPoint> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) {
        const ScenarioParameters params = scenario_at(p, scenario);
        const auto noise = ChannelNoiseModel::single_channel(scenario.eta1, scenario.eta2, params.rho,
                                                             params.fano_rho, params.d, params.fano_d);
        out.push_back(PumpPoint{p, params, nrf_full(params.fano, noise)});
    }
    return out;
}

}  // namespace twinbeam
