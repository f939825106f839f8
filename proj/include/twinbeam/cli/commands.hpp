#pragma once

// Subcommand jobs. Each job is parsed and fully validated from its config
// block (plus flag overrides) before any computation, then run to a table.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "twinbeam/cli/config.hpp"
#include "twinbeam/cli/svg_plot.hpp"
#include "twinbeam/cli/table.hpp"
#include "twinbeam/estimators.hpp"
#include "twinbeam/fwm_scenario.hpp"
#include "twinbeam/montecarlo.hpp"

namespace twinbeam::cli {

// Values given on the command line; they win over the config file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::string> grid;
    // optimize-eta only
    std::optional<double> eta1;
    std::optional<double> fano;
    std::optional<double> rho;
    std::optional<double> fano_rho;
    std::optional<double> d;
    std::optional<double> fano_d;
};

struct CommandOutput {
    Table table;
    std::optional<PlotSpec> plot;
    std::vector<std::string> report;    // human-readable lines (stdout)
    std::vector<std::string> warnings;  // stderr
};

// Seed precedence: --seed, then the config's top-level "seed", then the
// TWINBEAM_SEED environment variable, then 1.
std::uint64_t resolve_seed(const Block& root, const Overrides& overrides);

struct NrfModel {
    std::string id;
    double fano = 1.0;
    ChannelNoiseModel noise;  // eta2 is replaced by each grid value
};

struct NrfSweepJob {
    double eta1 = 0.7;
    std::vector<double> eta2;
    std::vector<NrfModel> models;
    bool fano_axis = true;  // column "F" (numeric) instead of "model"
    bool simulate = false;
    SimulationConfig simulation;  // source.fano and noise are set per model
};

NrfSweepJob parse_nrf_sweep(const Block& block, std::uint64_t seed, const Overrides& overrides);
CommandOutput run_nrf_sweep(const NrfSweepJob& job);

struct OptimizeJob {
    double eta1 = 0.7;
    double fano = 1.0;
    double rho = 0.0;
    std::optional<double> fano_rho;  // unset: linked to the source
    double d = 0.0;
    double fano_d = 1.0;
};

OptimizeJob parse_optimize(const Block& block, const Overrides& overrides);
CommandOutput run_optimize(const OptimizeJob& job);

struct ScenarioSweepJob {
    PumpScenario base;
    std::vector<double> pump;
    std::string parameter = "delta_eta";
    std::vector<double> values;
};

// Applies one secondary-axis value: lambda1..lambda10, w, eta2 or delta_eta
// (eta2 = eta1 + value).
PumpScenario apply_sweep_value(const PumpScenario& base, const std::string& parameter, double value);

ScenarioSweepJob parse_scenario_sweep(const Block& block, const Overrides& overrides);
CommandOutput run_scenario_sweep(const ScenarioSweepJob& job);

struct SimulateJob {
    SimulationConfig simulation;
    std::vector<double> eta2;
};

SimulateJob parse_simulate(const Block& block, std::uint64_t seed, const Overrides& overrides);
CommandOutput run_simulate(const SimulateJob& job);

struct BenchJob {
    std::vector<double> alphas;
    std::vector<double> sigma_stars;  // eta = 1 - sigma_star on both channels
    std::vector<double> epsilons;
    AbsorptionExperiment base;        // alpha, epsilon, eta and seed set per point
    bool noiseless = true;            // closed-form Gamma applies
};

BenchJob parse_estimator_bench(const Block& block, std::uint64_t seed, const Overrides& overrides);
CommandOutput run_estimator_bench_job(const BenchJob& job);

// Built-in figure data sets. Each entry pairs a file stem with its output.
struct FigureFile {
    std::string stem;
    CommandOutput output;
};

std::vector<FigureFile> run_figures(std::uint64_t seed, const Overrides& overrides);

// Full command-line entry point; returns the process exit code
// (0 ok, 2 usage or config, 3 domain, 4 internal).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twinbeam::cli
