#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "twinbeam/errors.hpp"
#include "twinbeam/noise_model.hpp"

using namespace twinbeam;

namespace {

// Independent route: assemble Var(n1 - n2) and <n1 + n2> from the moments of
// binomially thinned sources, then divide. Everything is per unit <N>.
double nrf_from_moments(double fano, const ChannelNoiseModel& m) {
    const double var_n = fano;  // Var(N) / <N>
    auto thinned_var = [](double eta, double mean, double var) {
        return eta * eta * var + eta * (1.0 - eta) * mean;
    };
    const double var1 = thinned_var(m.eta1, 1.0, var_n) + thinned_var(m.eta1, m.rho1, m.fano_rho1 * m.rho1) +
                        m.fano_d1 * m.d1;
    const double var2 = thinned_var(m.eta2, 1.0, var_n) + thinned_var(m.eta2, m.rho2, m.fano_rho2 * m.rho2) +
                        m.fano_d2 * m.d2;
    const double cov = m.eta1 * m.eta2 * var_n;
    const double mean = m.eta1 * (1.0 + m.rho1) + m.eta2 * (1.0 + m.rho2) + m.d1 + m.d2;
    return (var1 + var2 - 2.0 * cov) / mean;
}

ChannelNoiseModel random_model(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ChannelNoiseModel m;
    m.eta1 = unit(gen);
    m.eta2 = unit(gen);
    m.rho1 = 2.0 * unit(gen);
    m.rho2 = 2.0 * unit(gen);
    m.fano_rho1 = 1.0 + 5.0 * unit(gen);
    m.fano_rho2 = 1.0 + 5.0 * unit(gen);
    m.d1 = 0.1 * unit(gen);
    m.d2 = 0.1 * unit(gen);
    m.fano_d1 = 1.0 + 4.0 * unit(gen);
    m.fano_d2 = 1.0 + 4.0 * unit(gen);
    return m;
}

}  // namespace

TEST(NoiseModel, NoiselessExampleValues) {
    const NrfBreakdown b = nrf_noiseless(10.0, 0.7, 0.7);
    EXPECT_NEAR(b.sigma_p, 0.3, 1e-15);
    EXPECT_EQ(b.sigma_sp, 0.0);
    EXPECT_NEAR(b.total, 0.3, 1e-15);

    const NrfBreakdown c = nrf_noiseless(1.0, 1.0, 0.0);
    EXPECT_DOUBLE_EQ(c.total, 1.0);

    // (0.7 - 0.5)^2 * 3 / 1.2 = 0.1
    const NrfBreakdown d = nrf_noiseless(4.0, 0.7, 0.5);
    EXPECT_NEAR(d.sigma_sp, 0.1, 1e-15);
    EXPECT_NEAR(d.sigma_p, 1.0 - 0.7 / 1.2, 1e-15);
}

TEST(NoiseModel, CurveFourAtZeroEta2) {
    // F = 4, eta1 = 0.75, eta2 = 0, rho2 = 0.45, F_rho = 1.2, d = 0.01, F_d = 3
    const auto m = ChannelNoiseModel::single_channel(0.75, 0.0, 0.45, 1.2, 0.01, 3.0);
    const NrfBreakdown b = nrf_full(4.0, m);
    const double den = 0.75 + 0.02;
    EXPECT_DOUBLE_EQ(b.sigma_p, 1.0);
    EXPECT_NEAR(b.sigma_sp, 0.5625 * 3.0 / den, 1e-14);
    EXPECT_EQ(b.sigma_rho, 0.0);
    EXPECT_NEAR(b.sigma_d, 0.04 / den, 1e-15);
    EXPECT_NEAR(b.total, 3.2435, 5e-5);
    EXPECT_NEAR(b.total, nrf_from_moments(4.0, m), 1e-13);
}

TEST(NoiseModel, FullMatchesMomentOracle) {
    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> fano_dist(1.0, 50.0);
    for (int i = 0; i < 2000; ++i) {
        const ChannelNoiseModel m = random_model(gen);
        const double fano = fano_dist(gen);
        if (m.denominator() < 1e-6) continue;
        const NrfBreakdown b = nrf_full(fano, m);
        const double oracle = nrf_from_moments(fano, m);
        EXPECT_NEAR(b.total, oracle, 1e-12 * std::max(1.0, std::abs(oracle)));
        EXPECT_NEAR(b.total, b.sigma_p + b.sigma_sp + b.sigma_rho + b.sigma_d, 1e-15 * std::abs(b.total));
    }
}

TEST(NoiseModel, FullReducesToNoiseless) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double e1 = unit(gen), e2 = unit(gen), fano = 1.0 + 20.0 * unit(gen);
        if (e1 + e2 < 1e-6) continue;
        const NrfBreakdown a = nrf_noiseless(fano, e1, e2);
        const NrfBreakdown b = nrf_full(fano, ChannelNoiseModel::noiseless(e1, e2));
        EXPECT_DOUBLE_EQ(a.sigma_p, b.sigma_p);
        EXPECT_DOUBLE_EQ(a.sigma_sp, b.sigma_sp);
        EXPECT_EQ(b.sigma_rho, 0.0);
        EXPECT_EQ(b.sigma_d, 0.0);
    }
}

TEST(NoiseModel, SingleChannelRouteAgreesTermByTerm) {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double e1 = unit(gen), e2 = unit(gen), fano = 1.0 + 30.0 * unit(gen);
        const double rho = 3.0 * unit(gen), frho = 1.0 + 4.0 * unit(gen);
        const double d = 0.2 * unit(gen), fd = 1.0 + 4.0 * unit(gen);
        if (e1 + e2 + d < 1e-6) continue;
        const NrfBreakdown a = nrf_single_channel_noise(fano, e1, e2, rho, frho, d, fd);
        const NrfBreakdown b = nrf_full(fano, ChannelNoiseModel::single_channel(e1, e2, rho, frho, d, fd));
        auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
        EXPECT_LE(rel(a.sigma_p, b.sigma_p), 1e-12);
        if (b.sigma_sp != 0.0) EXPECT_LE(rel(a.sigma_sp, b.sigma_sp), 1e-12);
        if (b.sigma_rho != 0.0) EXPECT_LE(rel(a.sigma_rho, b.sigma_rho), 1e-12);
        if (b.sigma_d != 0.0) EXPECT_LE(rel(a.sigma_d, b.sigma_d), 1e-12);
    }
}

TEST(NoiseModel, BalancedChannelsFollowOneMinusEta) {
    for (double fano : {1.0, 3.0, 1e6}) {
        for (double eta = 0.05; eta <= 1.0; eta += 0.05) {
            EXPECT_NEAR(nrf_noiseless(fano, eta, eta).total, 1.0 - eta, 1e-14);
        }
    }
}

TEST(NoiseModel, BalancedChannelsIgnoreHugeFano) {
    const NrfBreakdown b = nrf_noiseless(std::numeric_limits<double>::infinity(), 0.6, 0.6);
    EXPECT_EQ(b.sigma_sp, 0.0);
    EXPECT_FALSE(std::isnan(b.total));
}

TEST(NoiseModel, ClassicalLimitOneArmBlocked) {
    // One channel dark: the other measures its own Fano factor.
    for (double fano : {1.0, 2.0, 7.5}) {
        const NrfBreakdown b = nrf_noiseless(fano, 0.8, 0.0);
        EXPECT_NEAR(b.total, 1.0 + 0.8 * (fano - 1.0), 1e-14);
    }
}

TEST(NoiseModel, PoissonianNrfNeverExceedsOne) {
    for (double e1 = 0.0; e1 <= 1.0; e1 += 0.05) {
        for (double e2 = 0.0; e2 <= 1.0; e2 += 0.05) {
            if (e1 + e2 == 0.0) continue;
            const double s = nrf_noiseless(1.0, e1, e2).total;
            EXPECT_LE(s, 1.0 + 1e-15);
            EXPECT_GE(s, 0.0);
        }
    }
}

TEST(NoiseModel, ComponentsAreNonnegative) {
    std::mt19937_64 gen(3);
    for (int i = 0; i < 1000; ++i) {
        const ChannelNoiseModel m = random_model(gen);
        if (m.denominator() <= 0.0) continue;
        const NrfBreakdown b = nrf_full(1.0 + 10.0 * std::uniform_real_distribution<double>()(gen), m);
        EXPECT_GE(b.sigma_p, 0.0);
        EXPECT_GE(b.sigma_sp, 0.0);
        EXPECT_GE(b.sigma_rho, 0.0);
        EXPECT_GE(b.sigma_d, 0.0);
    }
}

TEST(NoiseModel, MonotoneInFanoAwayFromBalance) {
    double prev = -1.0;
    for (double fano = 1.0; fano <= 20.0; fano += 0.5) {
        const double s = nrf_noiseless(fano, 0.7, 0.4).total;
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(NoiseModel, NoiseTermsIncreaseNrf) {
    const double base = nrf_full(2.0, ChannelNoiseModel::noiseless(0.8, 0.7)).total;
    const double with_d = nrf_full(2.0, ChannelNoiseModel::single_channel(0.8, 0.7, 0.0, 1.0, 0.05, 2.0)).total;
    EXPECT_GT(with_d, base);
    double prev = 0.0;
    for (double fd = 1.0; fd <= 5.0; fd += 1.0) {
        const double s = nrf_full(2.0, ChannelNoiseModel::single_channel(0.8, 0.7, 0.0, 1.0, 0.05, fd)).total;
        EXPECT_GT(s, prev);
        prev = s;
    }
}

TEST(NoiseModel, LossyBeamMoments) {
    const TwinBeamSource src{1e4, 4.0};
    const BeamMoments m = lossy_beam_moments(src, 0.6);
    EXPECT_DOUBLE_EQ(m.mean, 6000.0);
    // Detected Fano factor 1 + eta (F - 1)
    EXPECT_NEAR(fano_factor(m.variance, m.mean), 1.0 + 0.6 * 3.0, 1e-14);
    EXPECT_NEAR(src.beta(), 3e-4, 1e-18);
    EXPECT_NEAR(twin_covariance(src, 0.6, 0.5), 0.3 * (1e4 + 3e-4 * 1e8), 1e-9);
}

TEST(NoiseModel, ShotNoiseAndLossReduceSourceWithoutShift) {
    const TwinBeamSource src{500.0, 1.0};
    for (double eta : {0.0, 0.3, 1.0}) {
        const BeamMoments m = lossy_beam_moments(src, eta);
        EXPECT_DOUBLE_EQ(m.mean, m.variance);
    }
}

TEST(NoiseModel, LinkedOpticalFano) {
    EXPECT_DOUBLE_EQ(linked_optical_fano(4.0, 0.45), 1.0 + 0.45 * 3.0);
    EXPECT_DOUBLE_EQ(linked_optical_fano(1.0, 5.0), 1.0);
}

TEST(NoiseModel, RejectsInvalidInputs) {
    EXPECT_THROW(nrf_noiseless(0.5, 0.5, 0.5), DomainError);
    EXPECT_THROW(nrf_noiseless(2.0, 1.5, 0.5), DomainError);
    EXPECT_THROW(nrf_noiseless(2.0, 0.5, -0.1), DomainError);
    EXPECT_THROW(nrf_noiseless(2.0, 0.0, 0.0), DegenerateError);
    EXPECT_THROW(nrf_full(2.0, ChannelNoiseModel::noiseless(0.0, 0.0)), DegenerateError);
    EXPECT_THROW(fano_factor(1.0, 0.0), DomainError);
    EXPECT_THROW((TwinBeamSource{0.0, 2.0}.validate()), DomainError);
    EXPECT_THROW((TwinBeamSource{-1.0, 1.0}.validate()), DomainError);
    EXPECT_NO_THROW((TwinBeamSource{0.0, 1.0}.validate()));
    ChannelNoiseModel m;
    m.fano_d2 = 0.9;
    EXPECT_THROW(m.validate(), DomainError);
    m = ChannelNoiseModel{};
    m.rho1 = -0.1;
    EXPECT_THROW(m.validate(), DomainError);
}

TEST(NoiseModel, DarkCountsAloneGiveTheirFano) {
    // No light detected at all but dark counts present.
    const auto m = ChannelNoiseModel::single_channel(0.0, 0.0, 0.0, 1.0, 0.1, 2.5);
    EXPECT_NEAR(nrf_full(3.0, m).total, 2.5, 1e-14);
}
