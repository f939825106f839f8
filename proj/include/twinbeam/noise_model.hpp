#pragma once

// Analytic moments and noise-reduction factor (NRF) of twin beams under
// unbalanced channel loss with uncorrelated optical and detector noise.
//
// NRF is defined as Var(N1 - N2) / <N1 + N2>. All noise fractions are
// expressed relative to the lossless mean photon number <N>, so the NRF
// itself never depends on <N>.

namespace twinbeam {

// Lossless correlated-pair statistics.
struct TwinBeamSource {
    double mean_photons = 0.0;
    double fano = 1.0;

    // Throws DomainError for negative means, sub-Poissonian sources and
    // <N> = 0 with F > 1 (beta undefined).
    void validate() const;

    // beta = (F - 1) / <N>; zero for an empty Poissonian source.
    double beta() const;
};

// Per-channel efficiency plus uncorrelated optical noise (fraction rho of
// the lossless signal mean, Fano factor before loss) and detector noise
// (fraction d of <N>, not subject to channel loss).
struct ChannelNoiseModel {
    double eta1 = 1.0;
    double eta2 = 1.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    double fano_rho1 = 1.0;
    double fano_rho2 = 1.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double fano_d1 = 1.0;
    double fano_d2 = 1.0;

    void validate() const;

    // Optical noise on channel 2 only, identical detector noise on both.
    static ChannelNoiseModel single_channel(double eta1, double eta2, double rho,
                                            double fano_rho, double d, double fano_d);

    static ChannelNoiseModel noiseless(double eta1, double eta2);

    // True when rho1 = 0, d1 = d2 and fano_d1 = fano_d2.
    bool is_single_channel_form() const;

    // (1 + rho1) eta1 + (1 + rho2) eta2 + d1 + d2
    double denominator() const;
};

// Additive NRF decomposition: coherent (p), super-Poissonian (sp), optical
// noise (rho) and detector noise (d) contributions.
struct NrfBreakdown {
    double sigma_p = 0.0;
    double sigma_sp = 0.0;
    double sigma_rho = 0.0;
    double sigma_d = 0.0;
    double total = 0.0;

    static NrfBreakdown from_components(double p, double sp, double rho, double d);
};

struct BeamMoments {
    double mean = 0.0;
    double variance = 0.0;
};

double fano_factor(double variance, double mean);

BeamMoments lossy_beam_moments(const TwinBeamSource& source, double eta);

double twin_covariance(const TwinBeamSource& source, double eta1, double eta2);

NrfBreakdown nrf_noiseless(double fano, double eta1, double eta2);
NrfBreakdown nrf_noiseless(const TwinBeamSource& source, double eta1, double eta2);

// General per-channel model.
NrfBreakdown nrf_full(double fano, const ChannelNoiseModel& noise);
NrfBreakdown nrf_full(const TwinBeamSource& source, const ChannelNoiseModel& noise);

// Optical noise on channel 2 and balanced detector noise, evaluated from the
// reduced closed form. Kept as an independent route to nrf_full.
NrfBreakdown nrf_single_channel_noise(double fano, double eta1, double eta2, double rho,
                                      double fano_rho, double d, double fano_d);

// Optical-noise Fano factor tied to the source: F_rho - 1 = rho (F - 1).
double linked_optical_fano(double fano, double rho);

}  // namespace twinbeam
