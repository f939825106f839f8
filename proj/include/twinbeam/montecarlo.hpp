#pragma once

// Monte Carlo simulation of twin-beam detection.
//
// Per trial a lossless photon number N is drawn once and shared by both
// channels. Optical-noise photons (pre-loss) and detector dark counts are
// drawn independently per channel. Signal and optical photons are thinned by
// the channel efficiency; dark counts are added after thinning.
//
// All count sources are Gaussian with variance F * mean, rounded half to even
// and clamped at zero. Randomness is drawn from counter-based streams keyed by
// (seed, stream, trial), so results do not depend on the worker count.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twinbeam/noise_model.hpp"
#include "twinbeam/rng.hpp"
#include "twinbeam/stats.hpp"

namespace twinbeam {

enum class ThinningMethod { binomial, bernoulli };
enum class ErrorMethod { delta, bootstrap };

const char* to_string(ThinningMethod method);
const char* to_string(ErrorMethod method);

struct SimulationConfig {
    std::uint64_t trials = 100000;
    TwinBeamSource source{1e4, 1.0};
    ChannelNoiseModel noise;
    std::uint64_t seed = 1;
    ThinningMethod thinning = ThinningMethod::binomial;
    ErrorMethod error_method = ErrorMethod::delta;
    unsigned bootstrap_resamples = 200;
    // 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
    // sweep_eta2: draw pre-loss counts once and reuse them at every grid point.
    bool reuse_source_samples = true;

    double mean_photons_rho1() const { return noise.rho1 * source.mean_photons; }
    double mean_photons_rho2() const { return noise.rho2 * source.mean_photons; }
    double mean_photons_d1() const { return noise.d1 * source.mean_photons; }
    double mean_photons_d2() const { return noise.d2 * source.mean_photons; }

    void validate() const;

    // Count sources whose Gaussian approximation is poor (mean < 10 sd).
    std::vector<std::string> validity_warnings() const;
};

// One Gaussian-approximated count: round-half-even(mean + sqrt(F mean) z), >= 0.
std::int64_t sample_gaussian_count(double mean, double fano, CounterRng& rng);

// Loss of n photons with survival probability eta.
std::int64_t thin_count(std::int64_t n, double eta, ThinningMethod method, CounterRng& rng);

// Element j is drawn from CounterRng(key, j).
std::vector<std::int64_t> sample_source_counts(double mean, double fano, std::uint64_t trials,
                                               StreamKey key);

std::vector<std::int64_t> thin_counts(std::span<const std::int64_t> pre_loss, double eta,
                                      StreamKey key,
                                      ThinningMethod method = ThinningMethod::binomial);

// Pre-loss photon numbers and dark counts of one trial.
struct PreLossCounts {
    std::int64_t signal = 0;
    std::int64_t optical1 = 0;
    std::int64_t optical2 = 0;
    std::int64_t dark1 = 0;
    std::int64_t dark2 = 0;
};

// Everything needed to simulate a batch of trials of one experiment phase.
struct DetectionPlan {
    std::uint64_t seed = 1;
    TwinBeamSource source{1e4, 1.0};
    ChannelNoiseModel noise;
    ThinningMethod thinning = ThinningMethod::binomial;
    // Drift applied to the optical (signal and optical-noise) pre-loss means.
    double power_scale = 1.0;
    // Extra transmission on the probe (channel 1) optical path, e.g. a sample.
    double probe_transmission = 1.0;
    // Slot mixed into the pre-loss streams and the loss streams respectively.
    std::uint32_t source_slot = 0;
    std::uint32_t detection_slot = 0;

    static DetectionPlan from_config(const SimulationConfig& config);
};

PreLossCounts draw_pre_loss(const DetectionPlan& plan, std::uint64_t trial);

TrialCounts detect(const DetectionPlan& plan, const PreLossCounts& pre, std::uint64_t trial);

std::vector<TrialCounts> simulate_trials(const DetectionPlan& plan, std::uint64_t trials,
                                         unsigned workers);

struct NrfSimulationResult {
    StatEstimate nrf;
    StatEstimate fano1;
    StatEstimate fano2;
    StatEstimate covariance;
    StatEstimate mean1;
    StatEstimate mean2;
};

// Statistics of a batch of detected counts. Fano factors of an empty channel
// are reported as NaN.
NrfSimulationResult summarize_counts(std::span<const TrialCounts> counts, ErrorMethod method,
                                     unsigned resamples, StreamKey bootstrap_key);

NrfSimulationResult run_nrf_simulation(const SimulationConfig& config);

struct SweepPoint {
    double eta2 = 0.0;
    NrfSimulationResult result;
};

std::vector<SweepPoint> sweep_eta2(const SimulationConfig& config, std::span<const double> eta2_grid);

}  // namespace twinbeam
