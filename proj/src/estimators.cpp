#include "twinbeam/estimators.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxExcludedFraction = 0.01;

constexpr std::uint32_t kCalibrationSlot = 1;
constexpr std::uint32_t kMeasurementSlot = 2;
constexpr std::uint32_t kBaselineSlot = 3;

void require_same_length(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() != b.size()) throw DomainError("probe and reference batches differ in length");
    if (a.empty()) throw DomainError("empty trial batch");
}

void check_exclusions(const TrialEstimates& est, std::size_t total) {
    if (static_cast<double>(est.excluded) > kMaxExcludedFraction * static_cast<double>(total)) {
        std::ostringstream msg;
        msg << est.excluded << " of " << total
            << " trials have a zero reference count; ratio estimator needs a brighter reference";
        throw DomainError(msg.str());
    }
    if (est.values.empty()) throw DomainError("no trial with a nonzero reference count");
}

double batch_mean(const TrialEstimates& est) { return mean_of(est.values); }

}  // namespace

const char* to_string(Estimator estimator) {
    switch (estimator) {
        case Estimator::alpha_c:
            return "alpha_c";
        case Estimator::alpha_l:
            return "alpha_l";
        case Estimator::alpha_m:
            return "alpha_m";
        case Estimator::alpha_lm:
            return "alpha_lm";
    }
    return "unknown";
}

TrialEstimates alpha_c_trials(std::span<const std::int64_t> probe, double calib_mean1) {
    if (!(calib_mean1 > 0.0)) throw DomainError("alpha_c: calibration mean <n1> must be > 0");
    if (probe.empty()) throw DomainError("empty trial batch");
    TrialEstimates out;
    out.values.reserve(probe.size());
    for (std::int64_t n1 : probe) out.values.push_back(1.0 - static_cast<double>(n1) / calib_mean1);
    return out;
}

TrialEstimates alpha_l_trials(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                              double gamma_factor) {
    require_same_length(probe, ref);
    TrialEstimates out;
    out.values.reserve(probe.size());
    for (std::size_t j = 0; j < probe.size(); ++j) {
        if (ref[j] == 0) {
            ++out.excluded;
            continue;
        }
        out.values.push_back(1.0 - gamma_factor * static_cast<double>(probe[j]) /
                                       static_cast<double>(ref[j]));
    }
    check_exclusions(out, probe.size());
    return out;
}

TrialEstimates alpha_m_trials(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                              const SubtractionCalibration& calib) {
    require_same_length(probe, ref);
    if (!(calib.mean1 > 0.0)) throw DomainError("alpha_m: calibration mean <n1> must be > 0");
    TrialEstimates out;
    out.values.reserve(probe.size());
    for (std::size_t j = 0; j < probe.size(); ++j) {
        const double dn2 = static_cast<double>(ref[j]) - calib.mean_ref_meas;
        const double corrected = static_cast<double>(probe[j]) - calib.k * dn2 + calib.delta_e;
        out.values.push_back(1.0 - corrected / calib.mean1);
    }
    return out;
}

TrialEstimates alpha_lm_trials(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                               const RatioSubtractionCalibration& calib) {
    require_same_length(probe, ref);
    TrialEstimates out;
    out.values.reserve(probe.size());
    for (std::size_t j = 0; j < probe.size(); ++j) {
        if (ref[j] == 0) {
            ++out.excluded;
            continue;
        }
        const double dn2 = static_cast<double>(ref[j]) - calib.mean_ref_meas;
        const double corrected = static_cast<double>(probe[j]) - calib.k * dn2 + calib.delta_e;
        out.values.push_back(1.0 - calib.gamma_factor * corrected / static_cast<double>(ref[j]));
    }
    check_exclusions(out, probe.size());
    return out;
}

double estimate_alpha_c(std::span<const std::int64_t> probe, double calib_mean1) {
    return batch_mean(alpha_c_trials(probe, calib_mean1));
}

double estimate_alpha_l(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                        double gamma_factor) {
    return batch_mean(alpha_l_trials(probe, ref, gamma_factor));
}

double estimate_alpha_m(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                        const SubtractionCalibration& calib) {
    return batch_mean(alpha_m_trials(probe, ref, calib));
}

double estimate_alpha_lm(std::span<const std::int64_t> probe, std::span<const std::int64_t> ref,
                         const RatioSubtractionCalibration& calib) {
    return batch_mean(alpha_lm_trials(probe, ref, calib));
}

double optimal_k(double cov12, double var2, double mean1, double mean2, KFlavor flavor) {
    if (!(var2 > 0.0)) throw DomainError("optimal_k: reference variance must be > 0");
    const double k_m = cov12 / var2;
    if (flavor == KFlavor::m) return k_m;
    if (!(mean2 > 0.0)) throw DomainError("optimal_k: reference mean must be > 0");
    return k_m - mean1 / mean2;
}

double analytic_gamma(Estimator estimator, double alpha, double sigma_star) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    if (!(sigma_star >= 0.0 && sigma_star <= 1.0)) throw DomainError("sigma_star must lie in [0, 1]");
    switch (estimator) {
        case Estimator::alpha_c:
            return 1.0;
        case Estimator::alpha_l:
            return alpha + 2.0 * (1.0 - alpha) * sigma_star;
        case Estimator::alpha_m:
        case Estimator::alpha_lm:
            return alpha + 2.0 * (1.0 - alpha) * sigma_star * (1.0 - sigma_star / 2.0);
    }
    return kNaN;
}

double analytic_variance(Estimator estimator, double alpha, double sigma_star, double mean_n1) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    if (!(sigma_star >= 0.0 && sigma_star <= 1.0)) throw DomainError("sigma_star must lie in [0, 1]");
    if (!(mean_n1 > 0.0)) throw DomainError("mean_n1 must be > 0");
    const double var_c = (1.0 - alpha) / mean_n1;
    const double var_u = alpha * var_c;
    const double a2 = (1.0 - alpha) * (1.0 - alpha);
    switch (estimator) {
        case Estimator::alpha_c:
            return var_c;
        case Estimator::alpha_l:
            return var_u + 2.0 * a2 / mean_n1 * sigma_star;
        case Estimator::alpha_m:
            return var_u + 2.0 * a2 / ((1.0 - alpha) * mean_n1) * sigma_star * (1.0 - sigma_star / 2.0);
        case Estimator::alpha_lm:
            break;
    }
    throw DomainError("no closed-form variance for alpha_lm");
}

void AbsorptionExperiment::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
    if (!(epsilon >= -1.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be >= -1");
    if (calibration_trials < 2) throw DomainError("calibration_trials must be >= 2");
    if (measurement_trials < 2) throw DomainError("measurement_trials must be >= 2");
    source.validate();
    noise.validate();
}

const EstimatorReport& BenchResult::report(Estimator estimator) const {
    for (const auto& r : reports) {
        if (r.estimator == estimator) return r;
    }
    throw DomainError(std::string("no report for ") + to_string(estimator));
}

namespace {

struct Batch {
    std::vector<std::int64_t> probe;
    std::vector<std::int64_t> ref;
    double mean1 = 0.0;
    double mean2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;
    double cov12 = 0.0;
};

Batch run_phase(const AbsorptionExperiment& ex, std::uint32_t slot, double power_scale,
                double probe_transmission, std::uint64_t trials) {
    DetectionPlan plan;
    plan.seed = ex.seed;
    plan.source = ex.source;
    plan.noise = ex.noise;
    plan.power_scale = power_scale;
    plan.probe_transmission = probe_transmission;
    plan.source_slot = slot;
    plan.detection_slot = slot;
    const auto counts = simulate_trials(plan, trials, ex.workers);

    Batch b;
    b.probe.resize(trials);
    b.ref.resize(trials);
    for (std::size_t j = 0; j < counts.size(); ++j) {
        b.probe[j] = counts[j].detected1;
        b.ref[j] = counts[j].detected2;
    }
    const StatEstimate m1 = sample_channel_mean(counts, 1);
    const StatEstimate m2 = sample_channel_mean(counts, 2);
    const StatEstimate cov = sample_covariance(counts);
    b.mean1 = m1.value;
    b.mean2 = m2.value;
    const double n = static_cast<double>(trials);
    b.var1 = m1.std_error * m1.std_error * n;
    b.var2 = m2.std_error * m2.std_error * n;
    b.cov12 = cov.value;
    return b;
}

EstimatorReport summarize(Estimator estimator, const TrialEstimates& est, double alpha,
                          double mean_std_error, double k, double gamma_factor) {
    EstimatorReport r;
    r.estimator = estimator;
    r.mean = mean_of(est.values);
    r.variance = est.values.size() >= 2 ? variance_of(est.values) : kNaN;
    r.bias = r.mean - alpha;
    r.mse = r.variance + r.bias * r.bias;
    r.mean_std_error = mean_std_error;
    r.k_used = k;
    r.gamma_factor = gamma_factor;
    r.excluded = est.excluded;
    return r;
}

}  // namespace

BenchResult run_estimator_bench(const AbsorptionExperiment& ex) {
    ex.validate();
    BenchResult result;

    const double n = ex.source.mean_photons;
    const double expected_ref = (1.0 + ex.epsilon) * ex.noise.eta2 * (1.0 + ex.noise.rho2) * n +
                                ex.noise.d2 * n;
    if (!(expected_ref > 0.0)) {
        throw DomainError("expected reference count <n2'> is zero; ratio estimators undefined");
    }
    if (expected_ref < 100.0) {
        std::ostringstream msg;
        msg << "expected reference count <n2'> = " << expected_ref
            << " < 100; large-count ratio approximation is unreliable";
        result.warnings.push_back(msg.str());
    }

    // Calibration: no sample, no drift.
    const Batch cal = run_phase(ex, kCalibrationSlot, 1.0, 1.0, ex.calibration_trials);
    if (!(cal.mean1 > 0.0)) throw DomainError("calibration probe mean <n1> is zero");
    if (!(cal.mean2 > 0.0)) throw DomainError("calibration reference mean <n2> is zero");
    CalibrationSummary& c = result.calibration;
    c.trials = ex.calibration_trials;
    c.mean1 = cal.mean1;
    c.mean2 = cal.mean2;
    c.var1 = cal.var1;
    c.var2 = cal.var2;
    c.cov12 = cal.cov12;
    c.gamma_factor = cal.mean2 / cal.mean1;
    {
        CompensatedSum s;
        for (std::int64_t n2 : cal.ref) s.add(static_cast<double>(n2) - cal.mean2);
        c.delta_e = s.value() / static_cast<double>(cal.ref.size());
    }

    // Measurement: drifted power, sample on the probe path.
    const double scale = 1.0 + ex.epsilon;
    const Batch meas = run_phase(ex, kMeasurementSlot, scale, 1.0 - ex.alpha, ex.measurement_trials);

    double k_m = 0.0;
    double k_lm = 0.0;
    if (ex.k_source == KSource::measurement) {
        k_m = optimal_k(meas.cov12, meas.var2, meas.mean1, meas.mean2, KFlavor::m);
        k_lm = optimal_k(meas.cov12, meas.var2, meas.mean1, meas.mean2, KFlavor::lm);
    } else {
        k_m = optimal_k(cal.cov12, cal.var2, cal.mean1, cal.mean2, KFlavor::m);
        k_lm = optimal_k(cal.cov12, cal.var2, cal.mean1, cal.mean2, KFlavor::lm);
    }

    // Calibration-constant uncertainties (delta method on the phase means).
    const double tc = static_cast<double>(ex.calibration_trials);
    const double var_c1 = cal.var1 / tc;
    const double gamma = c.gamma_factor;
    const double var_gamma =
        gamma * gamma *
        (cal.var1 / (cal.mean1 * cal.mean1 * tc) + cal.var2 / (cal.mean2 * cal.mean2 * tc) -
         2.0 * cal.cov12 / (cal.mean1 * cal.mean2 * tc));

    const std::size_t tm = meas.probe.size();
    std::vector<double> psi;

    // alpha_c and alpha_m: the batch mean of k dn2' vanishes, so both means
    // fluctuate with mean(n1') alone.
    auto probe_mean_se = [&](double numerator_mean) {
        psi.assign(tm, 0.0);
        for (std::size_t j = 0; j < tm; ++j) {
            psi[j] = (static_cast<double>(meas.probe[j]) - meas.mean1) / cal.mean1;
        }
        const double cal_term = numerator_mean / (cal.mean1 * cal.mean1);
        const double se = influence_std_error(psi);
        return std::sqrt(se * se + cal_term * cal_term * var_c1);
    };

    // Ratio estimators: influence of each trial's ratio plus, for alpha_lm,
    // the centring of dn2' on the batch mean.
    auto ratio_se = [&](double k, double delta_e, double mean_ratio) {
        psi.clear();
        CompensatedSum inv;
        std::size_t used = 0;
        for (std::size_t j = 0; j < tm; ++j) {
            if (meas.ref[j] != 0) {
                inv.add(1.0 / static_cast<double>(meas.ref[j]));
                ++used;
            }
        }
        const double mean_inv_ref = inv.value() / static_cast<double>(used);
        for (std::size_t j = 0; j < tm; ++j) {
            if (meas.ref[j] == 0) continue;
            const double n1 = static_cast<double>(meas.probe[j]);
            const double n2 = static_cast<double>(meas.ref[j]);
            const double ratio = (n1 - k * (n2 - meas.mean2) + delta_e) / n2;
            psi.push_back(gamma * ((ratio - mean_ratio) + k * mean_inv_ref * (n2 - meas.mean2)));
        }
        const double se = influence_std_error(psi);
        return std::sqrt(se * se + mean_ratio * mean_ratio * var_gamma);
    };

    const double delta_e_m = k_m * c.delta_e;
    const double delta_e_lm = k_lm * c.delta_e;

    {
        const auto est = alpha_c_trials(meas.probe, cal.mean1);
        result.reports.push_back(
            summarize(Estimator::alpha_c, est, ex.alpha, probe_mean_se(meas.mean1), 0.0, gamma));
    }
    {
        const auto est = alpha_l_trials(meas.probe, meas.ref, gamma);
        const double mean_ratio = (1.0 - mean_of(est.values)) / gamma;
        result.reports.push_back(summarize(Estimator::alpha_l, est, ex.alpha,
                                           ratio_se(0.0, 0.0, mean_ratio), 0.0, gamma));
    }
    {
        const SubtractionCalibration calib{cal.mean1, meas.mean2, k_m, delta_e_m};
        const auto est = alpha_m_trials(meas.probe, meas.ref, calib);
        result.reports.push_back(summarize(Estimator::alpha_m, est, ex.alpha,
                                           probe_mean_se(meas.mean1 + delta_e_m), k_m, gamma));
    }
    {
        const RatioSubtractionCalibration calib{gamma, meas.mean2, k_lm, delta_e_lm};
        const auto est = alpha_lm_trials(meas.probe, meas.ref, calib);
        const double mean_ratio = (1.0 - mean_of(est.values)) / gamma;
        result.reports.push_back(summarize(Estimator::alpha_lm, est, ex.alpha,
                                           ratio_se(k_lm, delta_e_lm, mean_ratio), k_lm, gamma));
    }

    // Efficiency is measured against alpha_c at zero drift.
    if (ex.epsilon == 0.0) {
        result.baseline_mse_c = result.reports.front().mse;
    } else {
        const Batch base = run_phase(ex, kBaselineSlot, 1.0, 1.0 - ex.alpha, ex.measurement_trials);
        const auto est = alpha_c_trials(base.probe, cal.mean1);
        result.baseline_mse_c = summarize(Estimator::alpha_c, est, ex.alpha, 0.0, 0.0, gamma).mse;
    }
    if (result.baseline_mse_c > 0.0) {
        for (auto& r : result.reports) r.gamma = r.mse / result.baseline_mse_c;
    } else {
        for (auto& r : result.reports) r.gamma = kNaN;
        result.warnings.push_back(
            "alpha_c has zero mean squared error (e.g. full absorption); efficiency Gamma undefined");
    }
    return result;
}

}  // namespace twinbeam
