#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "twinbeam/errors.hpp"
#include "twinbeam/parallel.hpp"
#include "twinbeam/rng.hpp"
#include "twinbeam/stats.hpp"

using namespace twinbeam;

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(Philox, KnownAnswerZero) {
    const auto out = Philox4x32::encrypt({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
    const auto out = Philox4x32::encrypt({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                         {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
    const auto out = Philox4x32::encrypt({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                         {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, Reproducible) {
    CounterRng a(42, 7, 1000), b(42, 7, 1000);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(CounterRng, DistinctStreamsDiffer) {
    std::set<std::uint32_t> first;
    for (std::uint32_t stream = 0; stream < 64; ++stream) {
        for (std::uint64_t index : {0ull, 1ull, 1ull << 40}) first.insert(CounterRng(5, stream, index)());
    }
    EXPECT_EQ(first.size(), 64u * 3u);
    EXPECT_NE(CounterRng(1, 0, 0)(), CounterRng(2, 0, 0)());
    EXPECT_NE(CounterRng(1ull << 32, 0, 0)(), CounterRng(0, 0, 0)());
}

TEST(CounterRng, UniformMoments) {
    CounterRng rng(3, 1, 0);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        s2 += u * u;
    }
    const double m = s / n;
    EXPECT_NEAR(m, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(s2 / n - m * m, 1.0 / 12.0, 2e-3);
}

TEST(CounterRng, StreamIdLayout) {
    EXPECT_EQ(make_stream(3, 0), 3u);
    EXPECT_EQ(make_stream(3, 2), (2u << 8) | 3u);
    EXPECT_NE(make_stream(1, 1), make_stream(2, 0));
}

TEST(Parallel, CoversEveryIndexOnceForAnyWorkerCount) {
    for (unsigned workers : {1u, 2u, 3u, 8u}) {
        std::vector<int> hits(10007, 0);
        parallel_for_blocks(hits.size(), workers, [&](std::uint64_t b, std::uint64_t e) {
            for (auto i = b; i < e; ++i) ++hits[i];
        }, 100);
        for (int h : hits) ASSERT_EQ(h, 1);
    }
}

TEST(Parallel, PropagatesExceptions) {
    EXPECT_THROW(parallel_for_blocks(1000, 4, [](std::uint64_t b, std::uint64_t) {
        if (b >= 500) throw std::runtime_error("boom");
    }, 100), std::runtime_error);
}

TEST(Stats, CompensatedSumRecoversSmallTerms) {
    CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) s.add(1.0);
    s.add(-1e16);
    EXPECT_EQ(s.value(), 1000.0);
}

TEST(Stats, MeanVarianceAndStandardError) {
    const std::vector<double> xs{1, 2, 3, 4, 5};
    EXPECT_DOUBLE_EQ(mean_of(xs), 3.0);
    EXPECT_DOUBLE_EQ(variance_of(xs), 2.5);
    EXPECT_NEAR(sample_mean(xs).std_error, std::sqrt(2.5 / 5.0), 1e-15);
    EXPECT_THROW(variance_of(std::vector<double>{1.0}), DomainError);
    EXPECT_THROW(mean_of(std::vector<double>{}), DomainError);
}

TEST(Stats, SampleNrfMatchesDirectFormula) {
    const std::vector<TrialCounts> c{{10, 8}, {12, 11}, {9, 10}, {15, 12}, {11, 11}};
    double md = 0, ms = 0;
    for (auto& t : c) {
        md += t.detected1 - t.detected2;
        ms += t.detected1 + t.detected2;
    }
    md /= 5;
    ms /= 5;
    double v = 0;
    for (auto& t : c) v += std::pow(t.detected1 - t.detected2 - md, 2);
    v /= 4;
    EXPECT_NEAR(sample_nrf(c).value, v / ms, 1e-15);
    EXPECT_GT(sample_nrf(c).std_error, 0.0);
}

TEST(Stats, NrfDegenerateWhenDark) {
    const std::vector<TrialCounts> c(10, TrialCounts{0, 0});
    EXPECT_THROW(sample_nrf(c), DegenerateError);
    EXPECT_THROW(sample_fano(c, 1), DegenerateError);
}

TEST(Stats, DeltaStandardErrorIsCalibrated) {
    // Repeat an NRF estimate on independent Poisson pairs and compare the
    // spread of the estimates with the reported standard error.
    std::mt19937_64 gen(17);
    std::poisson_distribution<int> p(200.0);
    std::vector<double> estimates, errors;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<TrialCounts> c(2000);
        for (auto& t : c) t = {p(gen), p(gen)};
        const StatEstimate e = sample_nrf(c);
        estimates.push_back(e.value);
        errors.push_back(e.std_error);
    }
    const double spread = std::sqrt(variance_of(estimates));
    const double typical = mean_of(errors);
    EXPECT_NEAR(mean_of(estimates), 1.0, 4.0 * spread / std::sqrt(200.0));
    EXPECT_NEAR(spread / typical, 1.0, 0.15);
}

TEST(Stats, BootstrapAgreesWithDelta) {
    std::mt19937_64 gen(5);
    std::poisson_distribution<int> p(500.0);
    std::vector<TrialCounts> c(5000);
    for (auto& t : c) {
        const int shared = p(gen);
        t = {shared + p(gen) / 10, shared};
    }
    const StatEstimate d = sample_nrf(c);
    const StatEstimate b = bootstrap_nrf(c, 200, StreamKey{9, 1});
    EXPECT_DOUBLE_EQ(d.value, b.value);
    EXPECT_NEAR(b.std_error / d.std_error, 1.0, 0.25);
    EXPECT_EQ(bootstrap_nrf(c, 50, StreamKey{9, 1}).std_error, bootstrap_nrf(c, 50, StreamKey{9, 1}).std_error);
}

TEST(Stats, FanoAndCovariance) {
    std::mt19937_64 gen(8);
    std::poisson_distribution<int> p(1000.0);
    std::vector<TrialCounts> c(40000);
    for (auto& t : c) {
        const int shared = p(gen);
        t = {shared, shared + p(gen)};
    }
    const StatEstimate f1 = sample_fano(c, 1);
    EXPECT_NEAR(f1.value, 1.0, 4.0 * f1.std_error);
    const StatEstimate f2 = sample_fano(c, 2);
    EXPECT_NEAR(f2.value, 1.0, 4.0 * f2.std_error);
    const StatEstimate cov = sample_covariance(c);
    EXPECT_NEAR(cov.value, 1000.0, 4.0 * cov.std_error);
}

TEST(Stats, WelchTest) {
    std::mt19937_64 gen(2);
    std::normal_distribution<double> a(0.0, 1.0), b(0.0, 3.0), c(1.0, 1.0);
    std::vector<double> xa(400), xb(300), xc(400);
    for (auto& x : xa) x = a(gen);
    for (auto& x : xb) x = b(gen);
    for (auto& x : xc) x = c(gen);
    EXPECT_GT(welch_t_test_p_value(xa, xb), 0.01);
    EXPECT_LT(welch_t_test_p_value(xa, xc), 1e-6);
    // Symmetric in its arguments
    EXPECT_DOUBLE_EQ(welch_t_test_p_value(xa, xb), welch_t_test_p_value(xb, xa));
}
