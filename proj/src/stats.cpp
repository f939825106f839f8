#include "twinbeam/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "twinbeam/errors.hpp"

namespace twinbeam {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double mean_of(std::span<const double> xs) {
    if (xs.empty()) throw DomainError("mean of an empty sample");
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

double variance_of(std::span<const double> xs) {
    if (xs.size() < 2) throw DomainError("variance needs at least two samples");
    const double m = mean_of(xs);
    CompensatedSum s;
    for (double x : xs) s.add((x - m) * (x - m));
    return s.value() / static_cast<double>(xs.size() - 1);
}

double influence_std_error(std::span<const double> psi) {
    if (psi.size() < 2) throw DomainError("standard error needs at least two samples");
    CompensatedSum s;
    for (double p : psi) s.add(p * p);
    const double n = static_cast<double>(psi.size());
    return std::sqrt(s.value() / (n * (n - 1.0)));
}

StatEstimate sample_mean(std::span<const double> xs) {
    const double m = mean_of(xs);
    std::vector<double> psi(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) psi[j] = xs[j] - m;
    return StatEstimate{m, influence_std_error(psi)};
}

namespace {

double channel(const TrialCounts& c, int which) {
    return static_cast<double>(which == 1 ? c.detected1 : c.detected2);
}

void require_trials(std::span<const TrialCounts> counts) {
    if (counts.size() < 2) throw DomainError("statistics need at least two trials");
}

struct NrfParts {
    double mean_diff = 0.0;
    double mean_sum = 0.0;
    double var_diff = 0.0;
};

NrfParts nrf_parts(std::span<const TrialCounts> counts) {
    CompensatedSum diff, sum;
    for (const auto& c : counts) {
        diff.add(channel(c, 1) - channel(c, 2));
        sum.add(channel(c, 1) + channel(c, 2));
    }
    const double n = static_cast<double>(counts.size());
    NrfParts parts{diff.value() / n, sum.value() / n, 0.0};
    CompensatedSum sq;
    for (const auto& c : counts) {
        const double dd = channel(c, 1) - channel(c, 2) - parts.mean_diff;
        sq.add(dd * dd);
    }
    parts.var_diff = sq.value() / (n - 1.0);
    return parts;
}

}  // namespace

StatEstimate sample_nrf(std::span<const TrialCounts> counts) {
    require_trials(counts);
    const NrfParts parts = nrf_parts(counts);
    if (!(parts.mean_sum > 0.0)) throw DegenerateError("NRF undefined: no detected counts");
    const double m = parts.mean_sum;
    const double v = parts.var_diff;
    std::vector<double> psi(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const double dd = channel(counts[j], 1) - channel(counts[j], 2) - parts.mean_diff;
        const double ds = channel(counts[j], 1) + channel(counts[j], 2) - m;
        psi[j] = (dd * dd - v) / m - v * ds / (m * m);
    }
    return StatEstimate{v / m, influence_std_error(psi)};
}

StatEstimate bootstrap_nrf(std::span<const TrialCounts> counts, unsigned resamples, StreamKey key) {
    require_trials(counts);
    if (resamples < 2) throw DomainError("bootstrap needs at least two resamples");
    const StatEstimate point = sample_nrf(counts);
    const std::uint64_t n = counts.size();
    std::vector<TrialCounts> resample(n);
    std::vector<double> replicates;
    replicates.reserve(resamples);
    boost::random::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (unsigned r = 0; r < resamples; ++r) {
        CounterRng rng(key, r);
        for (std::uint64_t j = 0; j < n; ++j) resample[j] = counts[pick(rng)];
        const NrfParts parts = nrf_parts(resample);
        if (parts.mean_sum > 0.0) replicates.push_back(parts.var_diff / parts.mean_sum);
    }
    return StatEstimate{point.value, std::sqrt(variance_of(replicates))};
}

StatEstimate sample_fano(std::span<const TrialCounts> counts, int which) {
    require_trials(counts);
    CompensatedSum s;
    for (const auto& c : counts) s.add(channel(c, which));
    const double n = static_cast<double>(counts.size());
    const double m = s.value() / n;
    if (!(m > 0.0)) throw DegenerateError("Fano factor undefined: zero mean");
    CompensatedSum sq;
    for (const auto& c : counts) {
        const double dx = channel(c, which) - m;
        sq.add(dx * dx);
    }
    const double v = sq.value() / (n - 1.0);
    std::vector<double> psi(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const double dx = channel(counts[j], which) - m;
        psi[j] = (dx * dx - v) / m - v * dx / (m * m);
    }
    return StatEstimate{v / m, influence_std_error(psi)};
}

StatEstimate sample_channel_mean(std::span<const TrialCounts> counts, int which) {
    require_trials(counts);
    std::vector<double> xs(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) xs[j] = channel(counts[j], which);
    return sample_mean(xs);
}

StatEstimate sample_covariance(std::span<const TrialCounts> counts) {
    require_trials(counts);
    const double n = static_cast<double>(counts.size());
    CompensatedSum s1, s2;
    for (const auto& c : counts) {
        s1.add(channel(c, 1));
        s2.add(channel(c, 2));
    }
    const double m1 = s1.value() / n;
    const double m2 = s2.value() / n;
    CompensatedSum cross;
    for (const auto& c : counts) cross.add((channel(c, 1) - m1) * (channel(c, 2) - m2));
    const double cov = cross.value() / (n - 1.0);
    std::vector<double> psi(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        psi[j] = (channel(counts[j], 1) - m1) * (channel(counts[j], 2) - m2) - cov;
    }
    return StatEstimate{cov, influence_std_error(psi)};
}

double welch_t_test_p_value(std::span<const double> a, std::span<const double> b) {
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = variance_of(a) / na;
    const double vb = variance_of(b) / nb;
    const double se2 = va + vb;
    if (!(se2 > 0.0)) return mean_of(a) == mean_of(b) ? 1.0 : 0.0;
    const double t = (mean_of(a) - mean_of(b)) / std::sqrt(se2);
    const double dof = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    const boost::math::students_t_distribution<double> dist(dof);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace twinbeam
