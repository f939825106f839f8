#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twinbeam/rng.hpp"

namespace twinbeam {

// Point estimate with its standard error.
struct StatEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Detected counts of one acquisition window.
struct TrialCounts {
    std::int64_t detected1 = 0;
    std::int64_t detected2 = 0;
};

// Neumaier-compensated running sum.
class CompensatedSum {
  public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double mean_of(std::span<const double> xs);

// Unbiased (n - 1) sample variance.
double variance_of(std::span<const double> xs);

// Standard error from influence values: sqrt(sum psi^2 / (n (n - 1))).
double influence_std_error(std::span<const double> psi);

StatEstimate sample_mean(std::span<const double> xs);

// Var(n1 - n2) / <n1 + n2> with a delta-method standard error.
StatEstimate sample_nrf(std::span<const TrialCounts> counts);

// Same point estimate; standard error from bootstrap resampling of trials.
StatEstimate bootstrap_nrf(std::span<const TrialCounts> counts, unsigned resamples, StreamKey key);

// Fano factor of one channel (1 or 2), delta-method standard error.
StatEstimate sample_fano(std::span<const TrialCounts> counts, int channel);

StatEstimate sample_channel_mean(std::span<const TrialCounts> counts, int channel);

StatEstimate sample_covariance(std::span<const TrialCounts> counts);

// Welch two-sample t-test; returns the two-sided p-value.
double welch_t_test_p_value(std::span<const double> a, std::span<const double> b);

}  // namespace twinbeam
