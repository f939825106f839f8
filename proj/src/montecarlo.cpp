#include "twinbeam/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "twinbeam/errors.hpp"
#include "twinbeam/parallel.hpp"

namespace twinbeam {

namespace {

enum StreamTag : std::uint32_t {
    kSignal = 1,
    kOptical1,
    kOptical2,
    kDark1,
    kDark2,
    kThinSignal1,
    kThinSignal2,
    kThinOptical1,
    kThinOptical2,
    kProbeSample,
    kBootstrap,
};

CounterRng stream(const DetectionPlan& plan, StreamTag tag, std::uint32_t slot, std::uint64_t trial) {
    return CounterRng(plan.seed, make_stream(tag, slot), trial);
}

std::int64_t draw(double mean, double fano, const DetectionPlan& plan, StreamTag tag,
                  std::uint64_t trial) {
    if (mean == 0.0) return 0;
    CounterRng rng = stream(plan, tag, plan.source_slot, trial);
    return sample_gaussian_count(mean, fano, rng);
}

std::int64_t lose(std::int64_t n, double eta, const DetectionPlan& plan, StreamTag tag,
                  std::uint64_t trial) {
    CounterRng rng = stream(plan, tag, plan.detection_slot, trial);
    return thin_count(n, eta, plan.thinning, rng);
}

void require_unit(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

const char* to_string(ThinningMethod method) {
    return method == ThinningMethod::binomial ? "binomial" : "bernoulli";
}

const char* to_string(ErrorMethod method) {
    return method == ErrorMethod::delta ? "delta" : "bootstrap";
}

void SimulationConfig::validate() const {
    if (trials < 2) throw DomainError("trials must be >= 2 (variance needs two samples)");
    source.validate();
    noise.validate();
    if (error_method == ErrorMethod::bootstrap && bootstrap_resamples < 2) {
        throw DomainError("bootstrap_resamples must be >= 2");
    }
}

std::vector<std::string> SimulationConfig::validity_warnings() const {
    struct Source {
        const char* name;
        double mean;
        double fano;
    };
    const Source sources[] = {
        {"signal", source.mean_photons, source.fano},
        {"optical noise 1", mean_photons_rho1(), noise.fano_rho1},
        {"optical noise 2", mean_photons_rho2(), noise.fano_rho2},
        {"detector noise 1", mean_photons_d1(), noise.fano_d1},
        {"detector noise 2", mean_photons_d2(), noise.fano_d2},
    };
    std::vector<std::string> out;
    for (const auto& s : sources) {
        if (s.mean > 0.0 && s.mean < 10.0 * std::sqrt(s.fano * s.mean)) {
            std::ostringstream msg;
            msg << s.name << ": mean " << s.mean << " is below 10 standard deviations; "
                << "Gaussian count approximation may be inaccurate";
            out.push_back(msg.str());
        }
    }
    return out;
}

std::int64_t sample_gaussian_count(double mean, double fano, CounterRng& rng) {
    if (!(mean >= 0.0)) throw DomainError("count mean must be >= 0");
    if (!(fano >= 1.0)) throw DomainError("count Fano factor must be >= 1");
    if (mean == 0.0) return 0;
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    const double x = std::nearbyint(mean + std::sqrt(fano * mean) * normal(rng));
    return x > 0.0 ? static_cast<std::int64_t>(x) : 0;
}

std::int64_t thin_count(std::int64_t n, double eta, ThinningMethod method, CounterRng& rng) {
    if (n < 0) throw DomainError("cannot thin a negative count");
    require_unit(eta, "eta");
    if (n == 0 || eta == 0.0) return 0;
    if (eta == 1.0) return n;
    if (method == ThinningMethod::binomial) {
        boost::random::binomial_distribution<std::int64_t, double> binomial(n, eta);
        return binomial(rng);
    }
    std::int64_t kept = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        if (rng.uniform01() < eta) ++kept;
    }
    return kept;
}

std::vector<std::int64_t> sample_source_counts(double mean, double fano, std::uint64_t trials,
                                               StreamKey key) {
    if (!(mean >= 0.0)) throw DomainError("mean must be >= 0");
    if (!(fano >= 1.0)) throw DomainError("fano must be >= 1");
    std::vector<std::int64_t> out(trials);
    for (std::uint64_t j = 0; j < trials; ++j) {
        CounterRng rng(key, j);
        out[j] = sample_gaussian_count(mean, fano, rng);
    }
    return out;
}

std::vector<std::int64_t> thin_counts(std::span<const std::int64_t> pre_loss, double eta,
                                      StreamKey key, ThinningMethod method) {
    require_unit(eta, "eta");
    std::vector<std::int64_t> out(pre_loss.size());
    for (std::size_t j = 0; j < pre_loss.size(); ++j) {
        CounterRng rng(key, j);
        out[j] = thin_count(pre_loss[j], eta, method, rng);
    }
    return out;
}

DetectionPlan DetectionPlan::from_config(const SimulationConfig& config) {
    DetectionPlan plan;
    plan.seed = config.seed;
    plan.source = config.source;
    plan.noise = config.noise;
    plan.thinning = config.thinning;
    return plan;
}

PreLossCounts draw_pre_loss(const DetectionPlan& plan, std::uint64_t trial) {
    const double n = plan.source.mean_photons;
    const double optical = n * plan.power_scale;
    const auto& noise = plan.noise;
    PreLossCounts pre;
    pre.signal = draw(optical, plan.source.fano, plan, kSignal, trial);
    pre.optical1 = draw(noise.rho1 * optical, noise.fano_rho1, plan, kOptical1, trial);
    pre.optical2 = draw(noise.rho2 * optical, noise.fano_rho2, plan, kOptical2, trial);
    pre.dark1 = draw(noise.d1 * n, noise.fano_d1, plan, kDark1, trial);
    pre.dark2 = draw(noise.d2 * n, noise.fano_d2, plan, kDark2, trial);
    return pre;
}

TrialCounts detect(const DetectionPlan& plan, const PreLossCounts& pre, std::uint64_t trial) {
    const auto& noise = plan.noise;
    std::int64_t light1 = lose(pre.signal, noise.eta1, plan, kThinSignal1, trial) +
                          lose(pre.optical1, noise.eta1, plan, kThinOptical1, trial);
    if (plan.probe_transmission < 1.0) {
        light1 = lose(light1, plan.probe_transmission, plan, kProbeSample, trial);
    }
    const std::int64_t light2 = lose(pre.signal, noise.eta2, plan, kThinSignal2, trial) +
                                lose(pre.optical2, noise.eta2, plan, kThinOptical2, trial);
    return TrialCounts{light1 + pre.dark1, light2 + pre.dark2};
}

std::vector<TrialCounts> simulate_trials(const DetectionPlan& plan, std::uint64_t trials,
                                         unsigned workers) {
    plan.source.validate();
    plan.noise.validate();
    require_unit(plan.probe_transmission, "probe_transmission");
    if (!(plan.power_scale >= 0.0)) throw DomainError("power_scale must be >= 0");
    std::vector<TrialCounts> out(trials);
    parallel_for_blocks(trials, workers, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t j = begin; j < end; ++j) out[j] = detect(plan, draw_pre_loss(plan, j), j);
    });
    return out;
}

NrfSimulationResult summarize_counts(std::span<const TrialCounts> counts, ErrorMethod method,
                                     unsigned resamples, StreamKey bootstrap_key) {
    NrfSimulationResult r;
    r.nrf = method == ErrorMethod::delta ? sample_nrf(counts)
                                         : bootstrap_nrf(counts, resamples, bootstrap_key);
    r.mean1 = sample_channel_mean(counts, 1);
    r.mean2 = sample_channel_mean(counts, 2);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    r.fano1 = r.mean1.value > 0.0 ? sample_fano(counts, 1) : StatEstimate{nan, nan};
    r.fano2 = r.mean2.value > 0.0 ? sample_fano(counts, 2) : StatEstimate{nan, nan};
    r.covariance = sample_covariance(counts);
    return r;
}

NrfSimulationResult run_nrf_simulation(const SimulationConfig& config) {
    config.validate();
    const DetectionPlan plan = DetectionPlan::from_config(config);
    const auto counts = simulate_trials(plan, config.trials, config.workers);
    return summarize_counts(counts, config.error_method, config.bootstrap_resamples,
                            StreamKey{config.seed, make_stream(kBootstrap, 0)});
}

std::vector<SweepPoint> sweep_eta2(const SimulationConfig& config, std::span<const double> eta2_grid) {
    config.validate();
    for (double eta2 : eta2_grid) require_unit(eta2, "eta2 grid value");
    std::vector<SweepPoint> out;
    out.reserve(eta2_grid.size());
    for (std::size_t i = 0; i < eta2_grid.size(); ++i) {
        const auto slot = static_cast<std::uint32_t>(i + 1);
        DetectionPlan plan = DetectionPlan::from_config(config);
        plan.noise.eta2 = eta2_grid[i];
        plan.source_slot = config.reuse_source_samples ? 0 : slot;
        plan.detection_slot = slot;
        const auto counts = simulate_trials(plan, config.trials, config.workers);
        out.push_back(SweepPoint{eta2_grid[i],
                                 summarize_counts(counts, config.error_method,
                                                  config.bootstrap_resamples,
                                                  StreamKey{config.seed, make_stream(kBootstrap, slot)})});
    }
    return out;
}

}  // namespace twinbeam
