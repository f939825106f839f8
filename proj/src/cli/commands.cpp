#include "twinbeam/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "twinbeam/errors.hpp"
#include "twinbeam/optimizer.hpp"

namespace twinbeam::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> eta2_grid(const Block& block, const Overrides& ov, const GridSpec& fallback) {
    std::vector<double> values = read_grid(block, "eta2_grid", fallback);
    std::string field = block.field("eta2_grid");
    if (ov.grid) {
        values = GridSpec::parse(*ov.grid).values();
        field = "--grid";
    }
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(field, "eta2 values must lie in [0, 1]");
    }
    return values;
}

ThinningMethod read_thinning(const Block& b) {
    const std::string s = b.text("thinning", "binomial");
    if (s == "binomial") return ThinningMethod::binomial;
    if (s == "bernoulli") return ThinningMethod::bernoulli;
    throw ConfigError(b.field("thinning"), "must be 'binomial' or 'bernoulli'");
}

ErrorMethod read_error_method(const Block& b) {
    const std::string s = b.text("error_method", "delta");
    if (s == "delta") return ErrorMethod::delta;
    if (s == "bootstrap") return ErrorMethod::bootstrap;
    throw ConfigError(b.field("error_method"), "must be 'delta' or 'bootstrap'");
}

unsigned read_workers(const Block& b) {
    const std::uint64_t w = b.count("workers", 0);
    if (w > 4096) throw ConfigError(b.field("workers"), "unreasonably many workers");
    return static_cast<unsigned>(w);
}

std::uint64_t read_trials(const Block& b, const std::string& key, const Overrides& ov,
                          std::uint64_t fallback) {
    const std::uint64_t from_config = b.count(key, fallback);
    const std::uint64_t t = ov.trials ? *ov.trials : from_config;
    if (t < 2) throw ConfigError(ov.trials ? "--trials" : b.field(key), "trials must be >= 2");
    return t;
}

// Simulation settings shared by nrf-sweep and simulate-nrf.
void read_simulation_settings(const Block& b, const Overrides& ov, SimulationConfig& sim) {
    sim.trials = read_trials(b, "trials", ov, sim.trials);
    sim.thinning = read_thinning(b);
    sim.error_method = read_error_method(b);
    sim.bootstrap_resamples = static_cast<unsigned>(b.count("bootstrap_resamples", sim.bootstrap_resamples));
    if (sim.error_method == ErrorMethod::bootstrap && sim.bootstrap_resamples < 2) {
        throw ConfigError(b.field("bootstrap_resamples"), "must be >= 2");
    }
    sim.reuse_source_samples = b.flag("reuse_source_samples", sim.reuse_source_samples);
    sim.workers = read_workers(b);
}

std::string id_for_fano(double fano) { return "F=" + format_double(fano); }

Series line(std::string label, std::vector<double> x, std::vector<double> y) {
    Series s;
    s.label = std::move(label);
    s.x = std::move(x);
    s.y = std::move(y);
    return s;
}

}  // namespace

std::uint64_t resolve_seed(const Block& root, const Overrides& ov) {
    if (ov.seed) return *ov.seed;
    if (root.has("seed")) return root.count("seed", 1);
    if (const char* env = std::getenv("TWINBEAM_SEED"); env && *env) {
        std::uint64_t seed = 0;
        const char* end = env + std::char_traits<char>::length(env);
        const auto res = std::from_chars(env, end, seed);
        if (res.ec != std::errc() || res.ptr != end) {
            throw ConfigError("TWINBEAM_SEED", std::string("not an unsigned integer: '") + env + "'");
        }
        return seed;
    }
    return 1;
}

// ---------------------------------------------------------------- nrf-sweep

NrfSweepJob parse_nrf_sweep(const Block& b, std::uint64_t seed, const Overrides& ov) {
    NrfSweepJob job;
    job.eta1 = b.number("eta1", job.eta1);
    job.eta2 = eta2_grid(b, ov, GridSpec{0.0, 1.0, 101, GridScale::linear});

    const bool has_fano = b.has("fano_values");
    const bool has_models = b.has("models");
    if (has_fano && has_models) {
        throw ConfigError(b.path(), "give either 'fano_values' or 'models', not both");
    }
    if (!has_models) {
        job.fano_axis = true;
        const auto fanos = has_fano ? b.numbers("fano_values") : std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        if (fanos.empty()) throw ConfigError(b.field("fano_values"), "list is empty");
        for (double f : fanos) {
            NrfModel m{id_for_fano(f), f, ChannelNoiseModel::noiseless(job.eta1, 1.0)};
            validate_as_config(TwinBeamSource{1.0, f}, b.field("fano_values"));
            validate_as_config(m.noise, b.field("eta1"));
            job.models.push_back(m);
        }
    } else {
        job.fano_axis = false;
        const auto blocks = b.children("models");
        if (blocks.empty()) throw ConfigError(b.field("models"), "list is empty");
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            const Block& mb = blocks[i];
            NrfModel m;
            m.id = mb.text("id", std::to_string(i + 1));
            m.fano = mb.number("fano", 1.0);
            validate_as_config(TwinBeamSource{1.0, m.fano}, mb.field("fano"));
            m.noise = read_noise(mb.child("noise"), job.eta1, 1.0, m.fano);
            mb.finish();
            job.models.push_back(m);
        }
    }

    const Block sim = b.child("simulation");
    job.simulate = sim.flag("enabled", false);
    job.simulation.seed = seed;
    job.simulation.source.mean_photons = sim.number("mean_photons", 1e4);
    read_simulation_settings(sim, ov, job.simulation);
    sim.finish();
    if (job.simulate) {
        for (const auto& m : job.models) {
            SimulationConfig c = job.simulation;
            c.source.fano = m.fano;
            c.noise = m.noise;
            validate_as_config(c, sim.path());
        }
    }
    b.finish();
    return job;
}

CommandOutput run_nrf_sweep(const NrfSweepJob& job) {
    CommandOutput out;
    out.table.columns = {"eta2",     job.fano_axis ? "F" : "model", "sigma_p", "sigma_sp",
                         "sigma_rho", "sigma_d",                    "sigma_total"};
    if (job.simulate) {
        out.table.columns.push_back("mc_sigma");
        out.table.columns.push_back("mc_stderr");
    }
    PlotSpec plot;
    plot.title = "Noise reduction factor vs channel-2 efficiency";
    plot.x_label = "eta2";
    plot.y_label = "NRF";
    plot.reference_y = 1.0;

    for (std::size_t mi = 0; mi < job.models.size(); ++mi) {
        const NrfModel& m = job.models[mi];
        std::vector<SweepPoint> mc;
        if (job.simulate) {
            SimulationConfig c = job.simulation;
            c.source.fano = m.fano;
            c.noise = m.noise;
            c.seed = job.simulation.seed + mi;
            for (const auto& w : c.validity_warnings()) out.warnings.push_back(m.id + ": " + w);
            mc = sweep_eta2(c, job.eta2);
        }
        std::vector<double> analytic;
        for (std::size_t i = 0; i < job.eta2.size(); ++i) {
            ChannelNoiseModel noise = m.noise;
            noise.eta2 = job.eta2[i];
            const NrfBreakdown b = nrf_full(m.fano, noise);
            analytic.push_back(b.total);
            std::vector<Cell> row{job.eta2[i]};
            if (job.fano_axis) {
                row.emplace_back(m.fano);
            } else {
                row.emplace_back(m.id);
            }
            row.insert(row.end(), {b.sigma_p, b.sigma_sp, b.sigma_rho, b.sigma_d, b.total});
            if (job.simulate) {
                row.emplace_back(mc[i].result.nrf.value);
                row.emplace_back(mc[i].result.nrf.std_error);
            }
            out.table.add_row(std::move(row));
        }
        plot.series.push_back(line(m.id, job.eta2, analytic));
        if (job.simulate) {
            Series pts = line(m.id + " (MC)", job.eta2, {});
            pts.markers = true;
            for (const auto& p : mc) {
                pts.y.push_back(p.result.nrf.value);
                pts.y_error.push_back(p.result.nrf.std_error);
            }
            plot.series.push_back(std::move(pts));
        }
    }
    out.plot = std::move(plot);
    return out;
}

// ------------------------------------------------------------- optimize-eta

OptimizeJob parse_optimize(const Block& b, const Overrides& ov) {
    OptimizeJob job;
    auto pick = [&](const std::optional<double>& flag, const std::string& key,
                    std::optional<double> fallback) -> std::optional<double> {
        const std::optional<double> from_config = b.has(key) ? std::optional(b.number(key)) : fallback;
        return flag ? flag : from_config;
    };
    const auto eta1 = pick(ov.eta1, "eta1", std::nullopt);
    const auto fano = pick(ov.fano, "fano", std::nullopt);
    if (!eta1) throw ConfigError(b.field("eta1"), "required (or pass --eta1)");
    if (!fano) throw ConfigError(b.field("fano"), "required (or pass --fano)");
    job.eta1 = *eta1;
    job.fano = *fano;
    job.rho = *pick(ov.rho, "rho", 0.0);
    job.fano_rho = pick(ov.fano_rho, "fano_rho", std::nullopt);
    job.d = *pick(ov.d, "d", 0.0);
    job.fano_d = *pick(ov.fano_d, "fano_d", 1.0);
    b.finish();

    validate_as_config(TwinBeamSource{1.0, job.fano}, "fano");
    const ChannelNoiseModel noise = ChannelNoiseModel::single_channel(
        job.eta1, 1.0, job.rho, job.fano_rho.value_or(linked_optical_fano(job.fano, job.rho)), job.d,
        job.fano_d);
    validate_as_config(noise, b.path().empty() ? "optimize_eta" : b.path());
    return job;
}

CommandOutput run_optimize(const OptimizeJob& job) {
    const double linked = linked_optical_fano(job.fano, job.rho);
    const double fano_rho = job.fano_rho.value_or(linked);
    const bool closed_applies =
        job.d == 0.0 && (job.rho == 0.0 || std::abs(fano_rho - linked) <= 1e-12 * linked);

    std::optional<OptimumReport> closed;
    if (closed_applies) {
        closed = job.rho == 0.0 ? optimal_eta2_noiseless(job.eta1, job.fano)
                                : optimal_eta2_noisy(job.eta1, job.fano, job.rho);
    }
    const ChannelNoiseModel noise =
        ChannelNoiseModel::single_channel(job.eta1, 1.0, job.rho, fano_rho, job.d, job.fano_d);
    const OptimumReport numeric = numeric_min_eta2(job.fano, noise);
    const double diff = closed ? std::abs(closed->eta2_opt - numeric.eta2_opt) : kNaN;

    CommandOutput out;
    out.table.columns = {"eta1",           "F",
                         "rho",            "fano_rho",
                         "d",              "fano_d",
                         "closed_eta2_opt", "closed_regime",
                         "closed_threshold", "closed_nrf_at_opt",
                         "numeric_eta2_opt", "numeric_regime",
                         "numeric_nrf_at_opt", "abs_difference"};
    out.table.add_row({job.eta1, job.fano, job.rho, fano_rho, job.d, job.fano_d,
                       closed ? closed->eta2_opt : kNaN,
                       std::string(closed ? to_string(closed->regime) : "n/a"),
                       closed ? closed->threshold : kNaN, closed ? closed->nrf_at_opt : kNaN,
                       numeric.eta2_opt, std::string(to_string(numeric.regime)), numeric.nrf_at_opt, diff});

    auto describe = [](const char* name, const OptimumReport& r) {
        std::ostringstream s;
        s << name << "eta2_opt=" << format_double(r.eta2_opt) << " regime=" << to_string(r.regime)
          << " threshold=" << format_double(r.threshold) << " nrf_at_opt=" << format_double(r.nrf_at_opt);
        return s.str();
    };
    if (closed) {
        out.report.push_back(describe("closed form: ", *closed));
    } else {
        out.report.push_back("closed form: n/a (needs d = 0 and a source-linked optical Fano factor)");
    }
    out.report.push_back(describe("numeric:     ", numeric));
    out.report.push_back("difference:  |closed - numeric| = " + format_double(diff));
    return out;
}

// ----------------------------------------------------------- scenario-sweep

PumpScenario apply_sweep_value(const PumpScenario& base, const std::string& parameter, double value) {
    PumpScenario s = base;
    if (parameter == "eta2") {
        s.eta2 = value;
    } else if (parameter == "delta_eta") {
        s.eta2 = s.eta1 + value;
    } else if (parameter == "w") {
        s.w = value;
    } else if (parameter.rfind("lambda", 0) == 0) {
        int index = 0;
        const char* first = parameter.data() + 6;
        const char* last = parameter.data() + parameter.size();
        const auto res = std::from_chars(first, last, index);
        if (res.ec != std::errc() || res.ptr != last || index < 1 || index > 10) {
            throw ConfigError("sweep.parameter", "unknown parameter '" + parameter + "'");
        }
        s.lambda(index) = value;
    } else {
        throw ConfigError("sweep.parameter",
                          "unknown parameter '" + parameter + "' (lambda1..lambda10, w, eta2, delta_eta)");
    }
    return s;
}

ScenarioSweepJob parse_scenario_sweep(const Block& b, const Overrides& ov) {
    ScenarioSweepJob job;
    job.base = read_scenario(b);
    std::string grid_field = b.field("pump_grid");
    job.pump = read_grid(b, "pump_grid", GridSpec{1e-2, 1e3, 200, GridScale::log});
    if (ov.grid) {
        job.pump = GridSpec::parse(*ov.grid).values();
        grid_field = "--grid";
    }
    for (double p : job.pump) {
        if (!(p > 0.0)) throw ConfigError(grid_field, "pump power must be > 0");
    }

    const Block sweep = b.child("sweep");
    job.parameter = sweep.text("parameter", "eta2");
    job.values = sweep.has("values") ? sweep.numbers("values") : std::vector<double>{job.base.eta2};
    if (job.values.empty()) throw ConfigError(sweep.field("values"), "list is empty");
    sweep.finish();
    for (std::size_t i = 0; i < job.values.size(); ++i) {
        const std::string field = sweep.field("values") + "[" + std::to_string(i) + "]";
        PumpScenario s;
        try {
            s = apply_sweep_value(job.base, job.parameter, job.values[i]);
        } catch (const ConfigError& e) {
            throw ConfigError(sweep.field("parameter"), e.what());
        }
        validate_as_config(s, field);
    }
    b.finish();
    return job;
}

CommandOutput run_scenario_sweep(const ScenarioSweepJob& job) {
    CommandOutput out;
    out.table.columns = {"sweep_value", "p", "sigma_total", "sigma_p", "sigma_sp", "sigma_rho", "sigma_d"};
    PlotSpec plot;
    plot.title = "NRF vs pump power, varying " + job.parameter;
    plot.x_label = "pump power p";
    plot.y_label = "NRF";
    plot.log_x = true;
    plot.reference_y = 1.0;
    for (double v : job.values) {
        const auto points = nrf_vs_pump(job.pump, apply_sweep_value(job.base, job.parameter, v));
        Series s = line(job.parameter + "=" + format_double(v), job.pump, {});
        for (const auto& pt : points) {
            out.table.add_row({v, pt.p, pt.nrf.total, pt.nrf.sigma_p, pt.nrf.sigma_sp, pt.nrf.sigma_rho,
                               pt.nrf.sigma_d});
            s.y.push_back(pt.nrf.total);
        }
        plot.series.push_back(std::move(s));
    }
    out.plot = std::move(plot);
    return out;
}

// ------------------------------------------------------------- simulate-nrf

SimulateJob parse_simulate(const Block& b, std::uint64_t seed, const Overrides& ov) {
    SimulateJob job;
    SimulationConfig& sim = job.simulation;
    sim.seed = seed;
    sim.source = read_source(b.child("source"), TwinBeamSource{1e4, 1.0});
    const double eta1 = b.number("eta1", 0.75);
    sim.noise = read_noise(b.child("noise"), eta1, 1.0, sim.source.fano);
    job.eta2 = eta2_grid(b, ov, GridSpec{0.0, 1.0, 21, GridScale::linear});
    read_simulation_settings(b, ov, sim);
    b.finish();
    validate_as_config(sim, b.path());
    return job;
}

CommandOutput run_simulate(const SimulateJob& job) {
    CommandOutput out;
    out.warnings = job.simulation.validity_warnings();
    const auto points = sweep_eta2(job.simulation, job.eta2);
    out.table.columns = {"eta2", "mc_sigma", "mc_stderr", "analytic_sigma"};
    PlotSpec plot;
    plot.title = "Simulated vs analytic NRF";
    plot.x_label = "eta2";
    plot.y_label = "NRF";
    plot.reference_y = 1.0;
    Series analytic = line("analytic", job.eta2, {});
    Series mc = line("Monte Carlo", job.eta2, {});
    mc.markers = true;
    for (const auto& p : points) {
        ChannelNoiseModel noise = job.simulation.noise;
        noise.eta2 = p.eta2;
        const double a = nrf_full(job.simulation.source, noise).total;
        out.table.add_row({p.eta2, p.result.nrf.value, p.result.nrf.std_error, a});
        analytic.y.push_back(a);
        mc.y.push_back(p.result.nrf.value);
        mc.y_error.push_back(p.result.nrf.std_error);
    }
    plot.series = {analytic, mc};
    out.plot = std::move(plot);
    return out;
}

// ---------------------------------------------------------- estimator-bench

namespace {

std::vector<double> bench_axis(const Block& b, const std::string& key, double fallback, double lo,
                               double hi) {
    const auto values = b.has(key) ? read_grid(b, key) : std::vector<double>{fallback};
    for (double v : values) {
        if (!(v >= lo && v <= hi)) {
            std::ostringstream msg;
            msg << "values must lie in [" << lo << ", " << hi << "]";
            throw ConfigError(b.field(key), msg.str());
        }
    }
    return values;
}

}  // namespace

BenchJob parse_estimator_bench(const Block& b, std::uint64_t seed, const Overrides& ov) {
    BenchJob job;
    job.alphas = bench_axis(b, "alpha", 0.3, 0.0, 1.0);
    job.sigma_stars = bench_axis(b, "sigma_star", 0.1, 0.0, 1.0);
    if (ov.grid) {
        job.sigma_stars = GridSpec::parse(*ov.grid).values();
        for (double v : job.sigma_stars) {
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("--grid", "sigma_star values must lie in [0, 1]");
        }
    }
    job.epsilons = bench_axis(b, "epsilon", 0.0, -1.0, std::numeric_limits<double>::max());

    AbsorptionExperiment& ex = job.base;
    ex.seed = seed;
    ex.source = read_source(b.child("source"), TwinBeamSource{1e4, 1.0});
    ex.noise = read_noise(b.child("noise"), 1.0, 1.0, ex.source.fano);
    job.noiseless = ex.source.fano == 1.0 && ex.noise.rho1 == 0.0 && ex.noise.rho2 == 0.0 &&
                    ex.noise.d1 == 0.0 && ex.noise.d2 == 0.0;
    ex.calibration_trials = read_trials(b, "calibration_trials", ov, ex.calibration_trials);
    ex.measurement_trials = read_trials(b, "measurement_trials", ov, ex.measurement_trials);
    const std::string k = b.text("k_source", "measurement");
    if (k == "measurement") {
        ex.k_source = KSource::measurement;
    } else if (k == "calibration") {
        ex.k_source = KSource::calibration;
    } else {
        throw ConfigError(b.field("k_source"), "must be 'measurement' or 'calibration'");
    }
    ex.workers = read_workers(b);
    b.finish();

    for (double s : job.sigma_stars) {
        AbsorptionExperiment e = ex;
        e.noise.eta1 = e.noise.eta2 = 1.0 - s;
        validate_as_config(e, b.path());
    }
    return job;
}

CommandOutput run_estimator_bench_job(const BenchJob& job) {
    CommandOutput out;
    out.table.columns = {"estimator", "alpha", "sigma_star",      "epsilon",        "mean",
                         "bias",      "variance", "mse",          "gamma_empirical", "gamma_analytic",
                         "mean_stderr", "k_used"};
    PlotSpec plot;
    plot.title = "Estimator efficiency Gamma vs sigma*";
    plot.x_label = "sigma*";
    plot.y_label = "Gamma";
    plot.reference_y = 1.0;

    std::uint64_t index = 0;
    for (double eps : job.epsilons) {
        for (double alpha : job.alphas) {
            std::vector<double> g_l, g_m, a_l, a_m;
            for (double s : job.sigma_stars) {
                AbsorptionExperiment ex = job.base;
                ex.alpha = alpha;
                ex.epsilon = eps;
                ex.noise.eta1 = ex.noise.eta2 = 1.0 - s;
                ex.seed = job.base.seed + index++;
                const BenchResult r = run_estimator_bench(ex);
                for (const auto& w : r.warnings) {
                    std::ostringstream msg;
                    msg << "alpha=" << alpha << " sigma_star=" << s << " epsilon=" << eps << ": " << w;
                    out.warnings.push_back(msg.str());
                }
                for (const auto& rep : r.reports) {
                    const double analytic =
                        job.noiseless && eps == 0.0 ? analytic_gamma(rep.estimator, alpha, s) : kNaN;
                    out.table.add_row({std::string(to_string(rep.estimator)), alpha, s, eps, rep.mean, rep.bias,
                                       rep.variance, rep.mse, rep.gamma, analytic, rep.mean_std_error,
                                       rep.k_used});
                }
                g_l.push_back(r.report(Estimator::alpha_l).gamma);
                g_m.push_back(r.report(Estimator::alpha_m).gamma);
                const bool closed = job.noiseless && eps == 0.0;
                a_l.push_back(closed ? analytic_gamma(Estimator::alpha_l, alpha, s) : kNaN);
                a_m.push_back(closed ? analytic_gamma(Estimator::alpha_m, alpha, s) : kNaN);
            }
            if (eps == job.epsilons.front()) {
                const std::string tag = "alpha=" + format_double(alpha);
                Series el = line("l " + tag, job.sigma_stars, g_l);
                Series em = line("m " + tag, job.sigma_stars, g_m);
                el.markers = em.markers = true;
                plot.series.push_back(std::move(el));
                plot.series.push_back(std::move(em));
                if (job.noiseless && eps == 0.0) {
                    plot.series.push_back(line("l analytic " + tag, job.sigma_stars, a_l));
                    plot.series.push_back(line("m analytic " + tag, job.sigma_stars, a_m));
                }
            }
        }
    }
    out.plot = std::move(plot);
    return out;
}

// ------------------------------------------------------------------ figures

std::vector<FigureFile> run_figures(std::uint64_t seed, const Overrides& ov) {
    std::vector<FigureFile> files;
    const std::uint64_t trials = ov.trials ? *ov.trials : 100000;
    if (trials < 2) throw ConfigError("--trials", "trials must be >= 2");

    {
        NrfSweepJob job;
        job.eta1 = 0.7;
        job.eta2 = GridSpec{0.0, 1.0, 1001, GridScale::linear}.values();
        for (int f = 1; f <= 10; ++f) {
            job.models.push_back({id_for_fano(f), static_cast<double>(f), ChannelNoiseModel::noiseless(0.7, 1.0)});
        }
        files.push_back({"fig1_nrf", run_nrf_sweep(job)});

        CommandOutput locus;
        locus.table.columns = {"F", "eta2_closed_form", "eta2_numeric", "nrf_min", "threshold"};
        PlotSpec plot;
        plot.title = "Optimal eta2 (eta1 = 0.7)";
        plot.x_label = "F";
        plot.y_label = "eta2_opt";
        Series closed = line("closed form", {}, {});
        Series numeric = line("numeric", {}, {});
        numeric.markers = true;
        for (double f = 1.0; f <= 10.0; f += 1.0) {
            const OptimumReport c = optimal_eta2_noiseless(0.7, f);
            const OptimumReport n = numeric_min_eta2(f, ChannelNoiseModel::noiseless(0.7, 1.0));
            locus.table.add_row({f, c.eta2_opt, n.eta2_opt, c.nrf_at_opt, c.threshold});
            closed.x.push_back(f);
            closed.y.push_back(c.eta2_opt);
            numeric.x.push_back(f);
            numeric.y.push_back(n.eta2_opt);
        }
        plot.series = {closed, numeric};
        locus.plot = std::move(plot);
        files.push_back({"fig1_optimum", std::move(locus)});
    }
    {
        NrfSweepJob job;
        job.eta1 = 0.75;
        job.fano_axis = false;
        job.eta2 = GridSpec{0.0, 1.0, 21, GridScale::linear}.values();
        job.models = {
            {"1 poissonian", 1.0, ChannelNoiseModel::noiseless(0.75, 1.0)},
            {"2 super-poissonian", 4.0, ChannelNoiseModel::noiseless(0.75, 1.0)},
            {"3 optical noise", 4.0, ChannelNoiseModel::single_channel(0.75, 1.0, 0.45, 1.2, 0.0, 1.0)},
            {"4 optical and detector noise", 4.0,
             ChannelNoiseModel::single_channel(0.75, 1.0, 0.45, 1.2, 0.01, 3.0)},
        };
        job.simulate = true;
        job.simulation.seed = seed;
        job.simulation.trials = trials;
        job.simulation.source.mean_photons = 1e4;
        files.push_back({"fig2_nrf", run_nrf_sweep(job)});
    }
    {
        ScenarioSweepJob job;
        job.base = PumpScenario::reference();
        job.pump = GridSpec{1e-2, 1e3, 301, GridScale::log}.values();
        job.parameter = "lambda8";
        job.values = {0.5, 1.001, 2.0, 5.0};
        files.push_back({"fig3a_lambda8", run_scenario_sweep(job)});
        job.parameter = "lambda6";
        job.values = {0.5, 1.0, 2.0, 4.0};
        files.push_back({"fig3b_lambda6", run_scenario_sweep(job)});
        job.parameter = "delta_eta";
        job.values = {-0.05, 0.0, 0.05};
        files.push_back({"fig3c_delta_eta", run_scenario_sweep(job)});
    }
    {
        BenchJob job;
        job.alphas = {0.0, 0.2, 0.4, 0.6, 0.8};
        job.sigma_stars = {0.1, 0.3, 0.5, 0.7, 0.9};
        job.epsilons = {0.0};
        job.base.seed = seed;
        job.base.calibration_trials = trials;
        job.base.measurement_trials = trials;
        files.push_back({"fig4_gamma", run_estimator_bench_job(job)});
    }
    return files;
}

}  // namespace twinbeam::cli
