#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "twinbeam/cli/commands.hpp"
#include "twinbeam/errors.hpp"

namespace twinbeam::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInternal = 4;

const char* const kCommandBlocks[] = {"nrf_sweep", "optimize_eta", "scenario_sweep", "simulate_nrf",
                                      "estimator_bench"};

struct Flags {
    std::string config;
    std::uint64_t seed = 0;
    std::string out;
    bool plot = false;
    std::uint64_t trials = 0;
    std::string grid;
    double eta1 = 0, fano = 0, rho = 0, fano_rho = 0, d = 0, fano_d = 0;
};

struct Handles {
    CLI::Option* seed = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* trials = nullptr;
    CLI::Option* grid = nullptr;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
    if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string csv_text(const Table& table) {
    std::ostringstream s;
    write_csv(s, table);
    return s.str();
}

// Plotting never changes the exit code.
void write_plot(const CommandOutput& output, const fs::path& path, std::ostream& err) {
    if (!output.plot) return;
    try {
        write_text(path, render_svg(*output.plot));
    } catch (const std::exception& e) {
        err << "warning: plot not written: " << e.what() << '\n';
    }
}

void require_writable_parent(const fs::path& path, const std::string& field) {
    const fs::path parent = path.parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        throw ConfigError(field, "directory '" + parent.string() + "' does not exist");
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twin-beam noise reduction and absorption estimation toolkit", "twinbeam"};
    app.require_subcommand(1, 1);
    Flags f;
    Handles h;
    std::map<CLI::App*, Handles> handles;

    auto add_common = [&](CLI::App* sub) {
        Handles hs;
        sub->add_option("--config", f.config, "JSON configuration file");
        hs.seed = sub->add_option("--seed", f.seed, "Master seed (overrides config and TWINBEAM_SEED)");
        hs.out = sub->add_option("--out", f.out, "Output CSV path (default: stdout)");
        sub->add_flag("--plot", f.plot, "Also write an SVG plot next to the CSV");
        hs.trials = sub->add_option("--trials", f.trials, "Monte Carlo trials per point");
        hs.grid = sub->add_option("--grid", f.grid, "Sweep grid min:max:points[:log|linear]");
        handles[sub] = hs;
    };

    auto* nrf = app.add_subcommand("nrf-sweep", "Analytic NRF vs eta2, optional Monte Carlo overlay");
    auto* opt = app.add_subcommand("optimize-eta", "Optimal eta2: closed form and numeric minimizer");
    auto* scen = app.add_subcommand("scenario-sweep", "NRF vs pump power for the four-wave-mixing model");
    auto* sim = app.add_subcommand("simulate-nrf", "Monte Carlo NRF vs eta2 against the analytic model");
    auto* bench = app.add_subcommand("estimator-bench", "Absorption estimator bias, variance and efficiency");
    auto* figs = app.add_subcommand("figures", "Regenerate all reference figure data sets");
    for (auto* sub : {nrf, opt, scen, sim, bench, figs}) add_common(sub);

    std::map<std::string, CLI::Option*> opt_flags;
    opt_flags["eta1"] = opt->add_option("--eta1", f.eta1, "Channel-1 efficiency");
    opt_flags["fano"] = opt->add_option("--fano", f.fano, "Twin-beam Fano factor F");
    opt_flags["rho"] = opt->add_option("--rho", f.rho, "Optical noise fraction on channel 2");
    opt_flags["fano_rho"] = opt->add_option("--fano-rho", f.fano_rho, "Optical noise Fano factor");
    opt_flags["d"] = opt->add_option("--d", f.d, "Detector noise fraction per channel");
    opt_flags["fano_d"] = opt->add_option("--fano-d", f.fano_d, "Detector noise Fano factor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    h = handles[active];
    Overrides ov;
    if (h.seed->count()) ov.seed = f.seed;
    if (h.trials->count()) ov.trials = f.trials;
    if (h.grid->count()) ov.grid = f.grid;
    if (active == opt) {
        if (opt_flags["eta1"]->count()) ov.eta1 = f.eta1;
        if (opt_flags["fano"]->count()) ov.fano = f.fano;
        if (opt_flags["rho"]->count()) ov.rho = f.rho;
        if (opt_flags["fano_rho"]->count()) ov.fano_rho = f.fano_rho;
        if (opt_flags["d"]->count()) ov.d = f.d;
        if (opt_flags["fano_d"]->count()) ov.fano_d = f.fano_d;
    }

    try {
        const Json config = f.config.empty() ? Json::object() : load_config_file(f.config);
        const Block root(&config, "");
        const std::uint64_t seed = resolve_seed(root, ov);
        std::string out_path = h.out->count() ? f.out : root.text("out", "");
        const bool plot = f.plot || root.flag("plot", false);
        std::vector<Block> blocks;
        for (const char* name : kCommandBlocks) blocks.push_back(root.child(name));
        root.finish();
        auto block = [&](const char* name) {
            for (std::size_t i = 0; i < std::size(kCommandBlocks); ++i) {
                if (std::string(kCommandBlocks[i]) == name) return blocks[i];
            }
            throw std::logic_error("unknown block");
        };

        if (active == figs) {
            const fs::path dir = out_path.empty() ? fs::path("figures") : fs::path(out_path);
            if (ov.grid) throw ConfigError("--grid", "figures uses built-in grids");
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (!fs::is_directory(dir)) throw ConfigError("--out", "cannot create directory '" + dir.string() + "'");
            for (const auto& file : run_figures(seed, ov)) {
                for (const auto& w : file.output.warnings) err << "warning: " << file.stem << ": " << w << '\n';
                const fs::path csv = dir / (file.stem + ".csv");
                write_text(csv, csv_text(file.output.table));
                out << "wrote " << csv.string() << '\n';
                if (plot) write_plot(file.output, dir / (file.stem + ".svg"), err);
            }
            return kExitOk;
        }

        if (!out_path.empty()) require_writable_parent(out_path, "--out");

        CommandOutput result;
        if (active == nrf) {
            result = run_nrf_sweep(parse_nrf_sweep(block("nrf_sweep"), seed, ov));
        } else if (active == opt) {
            result = run_optimize(parse_optimize(block("optimize_eta"), ov));
        } else if (active == scen) {
            result = run_scenario_sweep(parse_scenario_sweep(block("scenario_sweep"), ov));
        } else if (active == sim) {
            result = run_simulate(parse_simulate(block("simulate_nrf"), seed, ov));
        } else {
            result = run_estimator_bench_job(parse_estimator_bench(block("estimator_bench"), seed, ov));
        }

        for (const auto& w : result.warnings) err << "warning: " << w << '\n';
        for (const auto& line : result.report) out << line << '\n';
        if (out_path.empty()) {
            write_csv(out, result.table);
            if (plot) err << "warning: --plot needs --out; plot skipped\n";
        } else {
            write_text(out_path, csv_text(result.table));
            if (plot) write_plot(result, fs::path(out_path).replace_extension(".svg"), err);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace twinbeam::cli
