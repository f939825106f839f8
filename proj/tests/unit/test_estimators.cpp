#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "twinbeam/errors.hpp"
#include "twinbeam/estimators.hpp"

using namespace twinbeam;

namespace {

AbsorptionExperiment experiment(double alpha, double epsilon, double eta, std::uint64_t trials) {
    AbsorptionExperiment ex;
    ex.alpha = alpha;
    ex.epsilon = epsilon;
    ex.noise = ChannelNoiseModel::noiseless(eta, eta);
    ex.calibration_trials = trials;
    ex.measurement_trials = trials;
    ex.seed = 77;
    return ex;
}

}  // namespace

TEST(Estimators, PerTrialArithmetic) {
    const std::vector<std::int64_t> probe{90, 80, 100};
    const std::vector<std::int64_t> ref{100, 100, 125};
    const auto c = alpha_c_trials(probe, 100.0);
    EXPECT_DOUBLE_EQ(c.values[0], 0.1);
    EXPECT_DOUBLE_EQ(c.values[1], 0.2);
    EXPECT_DOUBLE_EQ(c.values[2], 0.0);
    const auto l = alpha_l_trials(probe, ref, 1.25);
    EXPECT_DOUBLE_EQ(l.values[0], 1.0 - 1.25 * 0.9);
    EXPECT_DOUBLE_EQ(l.values[2], 0.0);

    const SubtractionCalibration m{100.0, 110.0, 0.5, 2.0};
    // 1 - (90 - 0.5 (100 - 110) + 2) / 100
    EXPECT_DOUBLE_EQ(alpha_m_trials(probe, ref, m).values[0], 1.0 - 97.0 / 100.0);
    const RatioSubtractionCalibration lm{1.25, 110.0, 0.5, 2.0};
    EXPECT_DOUBLE_EQ(alpha_lm_trials(probe, ref, lm).values[0], 1.0 - 1.25 * 97.0 / 100.0);
}

TEST(Estimators, SubtractionWithZeroWeightReduces) {
    const std::vector<std::int64_t> probe{90, 80, 100, 77};
    const std::vector<std::int64_t> ref{100, 95, 125, 60};
    EXPECT_DOUBLE_EQ(estimate_alpha_m(probe, ref, {100.0, 99.0, 0.0, 0.0}), estimate_alpha_c(probe, 100.0));
    EXPECT_DOUBLE_EQ(estimate_alpha_lm(probe, ref, {1.1, 99.0, 0.0, 0.0}), estimate_alpha_l(probe, ref, 1.1));
}

TEST(Estimators, CentredSubtractionKeepsBatchMean) {
    // dn2' centred on its own batch mean sums to zero, so alpha_m's batch
    // mean equals alpha_c's for any k.
    const std::vector<std::int64_t> probe{90, 80, 100, 77};
    const std::vector<std::int64_t> ref{100, 95, 125, 60};
    const double mean_ref = (100 + 95 + 125 + 60) / 4.0;
    EXPECT_NEAR(estimate_alpha_m(probe, ref, {100.0, mean_ref, 0.8, 0.0}), estimate_alpha_c(probe, 100.0), 1e-15);
}

TEST(Estimators, ZeroReferenceExclusion) {
    std::vector<std::int64_t> probe(1000, 50), ref(1000, 60);
    ref[3] = 0;
    const auto l = alpha_l_trials(probe, ref, 1.0);
    EXPECT_EQ(l.excluded, 1u);
    EXPECT_EQ(l.values.size(), 999u);
    for (int i = 0; i < 20; ++i) ref[i] = 0;
    EXPECT_THROW(alpha_l_trials(probe, ref, 1.0), DomainError);
    EXPECT_THROW(alpha_lm_trials(probe, ref, {1.0, 60.0, 0.1, 0.0}), DomainError);
}

TEST(Estimators, OptimalWeight) {
    EXPECT_DOUBLE_EQ(optimal_k(30.0, 60.0, 100.0, 50.0, KFlavor::m), 0.5);
    EXPECT_DOUBLE_EQ(optimal_k(30.0, 60.0, 100.0, 50.0, KFlavor::lm), 0.5 - 2.0);
    EXPECT_THROW(optimal_k(1.0, 0.0, 1.0, 1.0, KFlavor::m), DomainError);
}

TEST(Estimators, AnalyticGammaValues) {
    EXPECT_DOUBLE_EQ(analytic_gamma(Estimator::alpha_c, 0.4, 0.3), 1.0);
    EXPECT_DOUBLE_EQ(analytic_gamma(Estimator::alpha_l, 0.2, 0.5), 1.0);
    EXPECT_NEAR(analytic_gamma(Estimator::alpha_m, 0.2, 0.5), 0.8, 1e-15);
    EXPECT_DOUBLE_EQ(analytic_gamma(Estimator::alpha_l, 0.3, 0.0), 0.3);
    EXPECT_DOUBLE_EQ(analytic_gamma(Estimator::alpha_m, 1.0, 0.7), 1.0);
    EXPECT_DOUBLE_EQ(analytic_gamma(Estimator::alpha_lm, 0.3, 0.4), analytic_gamma(Estimator::alpha_m, 0.3, 0.4));
}

TEST(Estimators, GammaMInEtaForm) {
    // 1 - eta^2 (1 - alpha) with eta = 1 - sigma*
    for (double a = 0.0; a <= 1.0; a += 0.1) {
        for (double s = 0.0; s <= 1.0; s += 0.1) {
            const double eta = 1.0 - s;
            EXPECT_NEAR(analytic_gamma(Estimator::alpha_m, a, s), 1.0 - eta * eta * (1.0 - a), 1e-14);
            EXPECT_LE(analytic_gamma(Estimator::alpha_m, a, s), analytic_gamma(Estimator::alpha_l, a, s) + 1e-15);
        }
    }
}

TEST(Estimators, AnalyticVarianceRatios) {
    const double n1 = 9000.0;
    for (double a : {0.0, 0.3, 0.7}) {
        for (double s : {0.1, 0.5, 0.9}) {
            const double vc = analytic_variance(Estimator::alpha_c, a, s, n1);
            EXPECT_DOUBLE_EQ(vc, (1.0 - a) / n1);
            EXPECT_NEAR(analytic_variance(Estimator::alpha_l, a, s, n1) / vc, analytic_gamma(Estimator::alpha_l, a, s),
                        1e-12);
        }
    }
    // The alpha_m form, normalised by <n1'>, reproduces Gamma_m only without absorption.
    EXPECT_NEAR(analytic_variance(Estimator::alpha_m, 0.0, 0.4, n1) / analytic_variance(Estimator::alpha_c, 0.0, 0.4, n1),
                analytic_gamma(Estimator::alpha_m, 0.0, 0.4), 1e-12);
    EXPECT_THROW(analytic_variance(Estimator::alpha_lm, 0.1, 0.1, n1), DomainError);
}

TEST(Estimators, BenchUnbiasedWithoutDrift) {
    const BenchResult r = run_estimator_bench(experiment(0.3, 0.0, 0.9, 20000));
    for (Estimator e : kAllEstimators) {
        const EstimatorReport& rep = r.report(e);
        EXPECT_NEAR(rep.mean, 0.3, 3.5 * rep.mean_std_error) << to_string(e);
    }
    EXPECT_DOUBLE_EQ(r.report(Estimator::alpha_c).gamma, 1.0);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Estimators, DriftBiasesDirectEstimators) {
    const BenchResult r = run_estimator_bench(experiment(0.3, 0.1, 0.9, 20000));
    const double drifted = 1.0 - 0.7 * 1.1;
    EXPECT_NEAR(r.report(Estimator::alpha_c).mean, drifted, 3.5 * r.report(Estimator::alpha_c).mean_std_error);
    EXPECT_NEAR(r.report(Estimator::alpha_m).mean, drifted, 3.5 * r.report(Estimator::alpha_m).mean_std_error);
    EXPECT_NEAR(r.report(Estimator::alpha_l).mean, 0.3, 3.5 * r.report(Estimator::alpha_l).mean_std_error);
    EXPECT_NEAR(r.report(Estimator::alpha_lm).mean, 0.3, 3.5 * r.report(Estimator::alpha_lm).mean_std_error);
}

TEST(Estimators, MeanStandardErrorIsCalibrated) {
    // Spread of the alpha_l and alpha_m batch means over independent seeds
    // versus their reported standard errors.
    std::vector<double> ml, mm, sl, sm;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        AbsorptionExperiment ex = experiment(0.3, 0.0, 0.8, 4000);
        ex.seed = seed;
        const BenchResult r = run_estimator_bench(ex);
        ml.push_back(r.report(Estimator::alpha_l).mean);
        sl.push_back(r.report(Estimator::alpha_l).mean_std_error);
        mm.push_back(r.report(Estimator::alpha_m).mean);
        sm.push_back(r.report(Estimator::alpha_m).mean_std_error);
    }
    EXPECT_NEAR(std::sqrt(variance_of(ml)) / mean_of(sl), 1.0, 0.35);
    EXPECT_NEAR(std::sqrt(variance_of(mm)) / mean_of(sm), 1.0, 0.35);
}

TEST(Estimators, FullAbsorption) {
    const BenchResult r = run_estimator_bench(experiment(1.0, 0.0, 0.9, 2000));
    for (Estimator e : kAllEstimators) {
        EXPECT_NEAR(r.report(e).mean, 1.0, 1e-12) << to_string(e);
        EXPECT_TRUE(std::isnan(r.report(e).gamma));
    }
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Estimators, DimReferenceWarnsAndDarkReferenceFails) {
    AbsorptionExperiment ex = experiment(0.2, 0.0, 0.9, 2000);
    ex.source.mean_photons = 100.0;
    EXPECT_FALSE(run_estimator_bench(ex).warnings.empty());
    ex.noise.eta2 = 0.0;
    EXPECT_THROW(run_estimator_bench(ex), DomainError);
}

TEST(Estimators, DeterministicAcrossWorkers) {
    AbsorptionExperiment ex = experiment(0.4, 0.05, 0.7, 9000);
    ex.workers = 1;
    const BenchResult a = run_estimator_bench(ex);
    ex.workers = 6;
    const BenchResult b = run_estimator_bench(ex);
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
        EXPECT_EQ(a.reports[i].mean, b.reports[i].mean);
        EXPECT_EQ(a.reports[i].mse, b.reports[i].mse);
        EXPECT_EQ(a.reports[i].gamma, b.reports[i].gamma);
    }
}

TEST(Estimators, CalibrationKSourceOption) {
    AbsorptionExperiment ex = experiment(0.0, 0.0, 0.8, 20000);
    ex.k_source = KSource::calibration;
    const BenchResult r = run_estimator_bench(ex);
    // Without a sample both phases share statistics: k near eta.
    EXPECT_NEAR(r.report(Estimator::alpha_m).k_used, 0.8, 0.02);
}

TEST(Estimators, ExperimentValidation) {
    EXPECT_THROW(experiment(1.2, 0.0, 0.9, 100).validate(), DomainError);
    EXPECT_THROW(experiment(0.2, -1.5, 0.9, 100).validate(), DomainError);
    EXPECT_THROW(experiment(0.2, 0.0, 0.9, 1).validate(), DomainError);
}
