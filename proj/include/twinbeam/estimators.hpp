#pragma once

// Absorption estimators for a probe beam (channel 1, passes the sample) and
// a reference beam (channel 2), and a two-phase Monte Carlo benchmark that
// measures their bias, variance and efficiency relative to the shot-noise
// limit.
//
//   alpha_c  = 1 - n1' / <n1>                          direct, classical
//   alpha_l  = 1 - gamma n1' / n2'                     ratio
//   alpha_m  = 1 - (n1' - k dn2' + dE) / <n1>          reference-subtracted
//   alpha_lm = 1 - gamma (n1' - k dn2' + dE) / n2'     subtracted ratio
//
// with gamma = <n2>/<n1> from calibration and dn2' = n2' - <n2'>.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twinbeam/montecarlo.hpp"
#include "twinbeam/noise_model.hpp"

namespace twinbeam {

enum class Estimator { alpha_c, alpha_l, alpha_m, alpha_lm };
enum class KFlavor { m, lm };

const char* to_string(Estimator estimator);

inline constexpr Estimator kAllEstimators[] = {Estimator::alpha_c, Estimator::alpha_l,
                                               Estimator::alpha_m, Estimator::alpha_lm};

// Per-trial estimates. Ratio estimators drop trials with a zero reference
// count and record how many were dropped.
struct TrialEstimates {
    std::vector<double> values;
    std::size_t excluded = 0;
};

struct SubtractionCalibration {
    double mean1 = 0.0;          // <n1>, calibration phase
    double mean_ref_meas = 0.0;  // <n2'>, centres dn2'
    double k = 0.0;
    double delta_e = 0.0;
};

struct RatioSubtractionCalibration {
    double gamma_factor = 1.0;
    double mean_ref_meas = 0.0;
    double k = 0.0;
    double delta_e = 0.0;
};

TrialEstimates alpha_c_trials(std::span<const std::int64_t> probe, double calib_mean1);
TrialEstimates alpha_l_trials(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                              double gamma_factor);
TrialEstimates alpha_m_trials(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                              const SubtractionCalibration& calib);
TrialEstimates alpha_lm_trials(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                               const RatioSubtractionCalibration& calib);

// Batch averages of the per-trial estimates above.
double estimate_alpha_c(std::span<const std::int64_t> probe, double calib_mean1);
double estimate_alpha_l(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                        double gamma_factor);
double estimate_alpha_m(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                        const SubtractionCalibration& calib);
double estimate_alpha_lm(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                         const RatioSubtractionCalibration& calib);

// m: Cov(n1', n2') / Var(n2');  lm: the m weight minus <n1'>/<n2'>.
double optimal_k(double cov12, double var2, double mean1, double mean2, KFlavor flavor);

// MSE relative to alpha_c for balanced, noiseless detection with
// sigma_star = 1 - eta. alpha_lm shares alpha_m's leading-order value.
double analytic_gamma(Estimator estimator, double alpha, double sigma_star);

// Closed-form single-trial variances for balanced, noiseless detection;
// mean_n1 is the calibration probe mean <n1>. The alpha_m form is normalised
// by <n1'> = (1 - alpha) <n1>. Not defined for alpha_lm.
double analytic_variance(Estimator estimator, double alpha, double sigma_star, double mean_n1);

enum class KSource { measurement, calibration };

struct AbsorptionExperiment {
    double alpha = 0.0;
    double epsilon = 0.0;  // power drift between calibration and measurement
    std::uint64_t calibration_trials = 100000;
    std::uint64_t measurement_trials = 100000;
    TwinBeamSource source{1e4, 1.0};
    ChannelNoiseModel noise;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    // Statistics used for the weight k.
    KSource k_source = KSource::measurement;

    void validate() const;
};

struct CalibrationSummary {
    std::uint64_t trials = 0;
    double mean1 = 0.0;
    double mean2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    double cov12 = 0.0;
    double gamma_factor = 0.0;
    double delta_e = 0.0;  // calibration-phase mean of dn2 (times k at use)
};

struct EstimatorReport {
    Estimator estimator = Estimator::alpha_c;
    double mean = 0.0;
    double mean_std_error = 0.0;  // includes calibration uncertainty
    double variance = 0.0;        // single-trial variance
    double mse = 0.0;
    double bias = 0.0;
    double gamma = 0.0;           // MSE / MSE(alpha_c at zero drift); NaN if degenerate
    double k_used = 0.0;
    double gamma_factor = 0.0;
    std::size_t excluded = 0;
};

struct BenchResult {
    CalibrationSummary calibration;
    std::vector<EstimatorReport> reports;
    double baseline_mse_c = 0.0;
    std::vector<std::string> warnings;

    const EstimatorReport& report(Estimator estimator) const;
};

BenchResult run_estimator_bench(const AbsorptionExperiment& experiment);

}  // namespace twinbeam
