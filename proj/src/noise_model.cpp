#include "twinbeam/noise_model.hpp"

#include <cmath>
#include <string>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

void require_efficiency(double eta, const char* name) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(eta));
    }
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be a finite value >= 0, got " +
                          std::to_string(value));
    }
}

void require_fano(double fano, const char* name) {
    if (!(fano >= 1.0)) {
        throw DomainError(std::string(name) + " must be >= 1 (super-Poissonian or Poissonian), got " +
                          std::to_string(fano));
    }
}

// (eta1 - eta2)^2 (F - 1), exactly zero for balanced channels even when F
// overflows to infinity.
double mismatch_term(double eta1, double eta2, double fano) {
    const double diff = eta1 - eta2;
    if (diff == 0.0) return 0.0;
    return diff * diff * (fano - 1.0);
}

}  // namespace

void TwinBeamSource::validate() const {
    require_nonnegative(mean_photons, "mean_photons");
    require_fano(fano, "fano");
    if (mean_photons == 0.0 && fano > 1.0) {
        throw DomainError("mean_photons = 0 with fano > 1 leaves beta undefined");
    }
}

double TwinBeamSource::beta() const {
    validate();
    if (mean_photons == 0.0) return 0.0;
    return (fano - 1.0) / mean_photons;
}

void ChannelNoiseModel::validate() const {
    require_efficiency(eta1, "eta1");
    require_efficiency(eta2, "eta2");
    require_nonnegative(rho1, "rho1");
    require_nonnegative(rho2, "rho2");
    require_fano(fano_rho1, "fano_rho1");
    require_fano(fano_rho2, "fano_rho2");
    require_nonnegative(d1, "d1");
    require_nonnegative(d2, "d2");
    require_fano(fano_d1, "fano_d1");
    require_fano(fano_d2, "fano_d2");
}

ChannelNoiseModel ChannelNoiseModel::single_channel(double eta1, double eta2, double rho,
                                                    double fano_rho, double d, double fano_d) {
    ChannelNoiseModel m;
    m.eta1 = eta1;
    m.eta2 = eta2;
    m.rho2 = rho;
    m.fano_rho2 = fano_rho;
    m.d1 = d;
    m.d2 = d;
    m.fano_d1 = fano_d;
    m.fano_d2 = fano_d;
    return m;
}

ChannelNoiseModel ChannelNoiseModel::noiseless(double eta1, double eta2) {
    ChannelNoiseModel m;
    m.eta1 = eta1;
    m.eta2 = eta2;
    return m;
}

bool ChannelNoiseModel::is_single_channel_form() const {
    return rho1 == 0.0 && d1 == d2 && fano_d1 == fano_d2;
}

double ChannelNoiseModel::denominator() const {
    return (1.0 + rho1) * eta1 + (1.0 + rho2) * eta2 + d1 + d2;
}

NrfBreakdown NrfBreakdown::from_components(double p, double sp, double rho, double d) {
    return NrfBreakdown{p, sp, rho, d, p + sp + rho + d};
}

double fano_factor(double variance, double mean) {
    if (!(mean > 0.0)) {
        throw DomainError("fano_factor: mean must be > 0, got " + std::to_string(mean));
    }
    if (!(variance >= 0.0)) {
        throw DomainError("fano_factor: variance must be >= 0, got " + std::to_string(variance));
    }
    return variance / mean;
}

BeamMoments lossy_beam_moments(const TwinBeamSource& source, double eta) {
    source.validate();
    require_efficiency(eta, "eta");
    const double n = source.mean_photons;
    return BeamMoments{eta * n, eta * n + eta * eta * (source.fano - 1.0) * n};
}

double twin_covariance(const TwinBeamSource& source, double eta1, double eta2) {
    require_efficiency(eta1, "eta1");
    require_efficiency(eta2, "eta2");
    const double n = source.mean_photons;
    return eta1 * eta2 * (n + source.beta() * n * n);
}

NrfBreakdown nrf_noiseless(double fano, double eta1, double eta2) {
    require_fano(fano, "fano");
    require_efficiency(eta1, "eta1");
    require_efficiency(eta2, "eta2");
    const double sum = eta1 + eta2;
    if (sum <= 0.0) {
        throw DegenerateError("nrf_noiseless: eta1 + eta2 = 0, no detected light");
    }
    return NrfBreakdown::from_components(1.0 - 2.0 * eta1 * eta2 / sum,
                                         mismatch_term(eta1, eta2, fano) / sum, 0.0, 0.0);
}

NrfBreakdown nrf_noiseless(const TwinBeamSource& source, double eta1, double eta2) {
    source.validate();
    return nrf_noiseless(source.fano, eta1, eta2);
}

NrfBreakdown nrf_full(double fano, const ChannelNoiseModel& noise) {
    require_fano(fano, "fano");
    noise.validate();
    const double den = noise.denominator();
    if (!(den > 0.0)) {
        throw DegenerateError("nrf_full: detected-sum denominator is zero");
    }
    const double e1 = noise.eta1;
    const double e2 = noise.eta2;
    const double optical = e1 * e1 * noise.rho1 * (noise.fano_rho1 - 1.0) +
                           e2 * e2 * noise.rho2 * (noise.fano_rho2 - 1.0);
    const double detector = noise.d1 * (noise.fano_d1 - 1.0) + noise.d2 * (noise.fano_d2 - 1.0);
    return NrfBreakdown::from_components(1.0 - 2.0 * e1 * e2 / den, mismatch_term(e1, e2, fano) / den,
                                         optical / den, detector / den);
}

NrfBreakdown nrf_full(const TwinBeamSource& source, const ChannelNoiseModel& noise) {
    source.validate();
    return nrf_full(source.fano, noise);
}

NrfBreakdown nrf_single_channel_noise(double fano, double eta1, double eta2, double rho,
                                      double fano_rho, double d, double fano_d) {
    ChannelNoiseModel::single_channel(eta1, eta2, rho, fano_rho, d, fano_d).validate();
    require_fano(fano, "fano");
    const double den = eta1 + (1.0 + rho) * eta2 + 2.0 * d;
    if (!(den > 0.0)) {
        throw DegenerateError("nrf_single_channel_noise: detected-sum denominator is zero");
    }
    return NrfBreakdown::from_components(1.0 - 2.0 * eta1 * eta2 / den,
                                         mismatch_term(eta1, eta2, fano) / den,
                                         eta2 * eta2 * rho * (fano_rho - 1.0) / den,
                                         2.0 * d * (fano_d - 1.0) / den);
}

double linked_optical_fano(double fano, double rho) {
    require_fano(fano, "fano");
    require_nonnegative(rho, "rho");
    return 1.0 + rho * (fano - 1.0);
}

}  // namespace twinbeam
