#include "twinbeam/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "twinbeam/errors.hpp"

namespace twinbeam {

namespace {

constexpr double kSingularDenominator = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_eta1(double eta1) {
    if (!(eta1 > 0.0 && eta1 <= 1.0)) {
        throw DomainError("eta1 must lie in (0, 1], got " + std::to_string(eta1));
    }
}

void require_fano(double fano) {
    if (!(fano >= 1.0) || !std::isfinite(fano)) {
        throw DomainError("fano must be finite and >= 1, got " + std::to_string(fano));
    }
}

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

ChannelNoiseModel linked_model(double eta1, double eta2, double fano, double rho) {
    return ChannelNoiseModel::single_channel(eta1, eta2, rho, linked_optical_fano(fano, rho), 0.0, 1.0);
}

Regime regime_of(double eta2) {
    return eta2 == 1.0 ? Regime::saturated_at_unity : Regime::interior;
}

}  // namespace

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::saturated_at_unity:
            return "saturated_at_unity";
        case Regime::interior:
            return "interior";
    }
    return "unknown";
}

double threshold_noiseless(double eta1) {
    require_eta1(eta1);
    const double den = 3.0 * eta1 * eta1 - 2.0 * eta1 - 1.0;
    if (std::abs(den) < kSingularDenominator) return kInf;
    return (eta1 * eta1 - 2.0 * eta1 - 1.0) / den;
}

double threshold_noisy(double eta1, double rho) {
    require_eta1(eta1);
    if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
    const double den = eta1 * eta1 * (rho + 3.0) - (2.0 * eta1 + rho + 1.0) * (1.0 + rho * rho);
    if (std::abs(den) < kSingularDenominator) return kInf;
    return 1.0 - 2.0 * eta1 * eta1 / den;
}

OptimumReport optimal_eta2_noiseless(double eta1, double fano) {
    require_eta1(eta1);
    require_fano(fano);
    OptimumReport report;
    report.threshold = threshold_noiseless(eta1);
    double eta2 = 1.0;
    if (fano > report.threshold) {
        eta2 = eta1 * (std::sqrt(4.0 + 2.0 / (fano - 1.0)) - 1.0);
        eta2 = std::clamp(eta2, 0.0, 1.0);
    }
    report.eta2_opt = eta2;
    report.regime = regime_of(eta2);
    report.nrf_at_opt = nrf_noiseless(fano, eta1, eta2).total;
    return report;
}

OptimumReport optimal_eta2_noisy(double eta1, double fano, double rho) {
    require_eta1(eta1);
    require_fano(fano);
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("rho must be finite and >= 0");
    OptimumReport report;
    report.threshold = threshold_noisy(eta1, rho);
    double eta2 = 1.0;
    if (std::isinf(report.threshold)) {
        // Singular threshold: let the numeric minimizer pick the regime.
        eta2 = numeric_min_eta2(fano, linked_model(eta1, 0.0, fano, rho)).eta2_opt;
    } else if (fano > report.threshold) {
        const double inner =
            2.0 + 2.0 * (2.0 * rho * fano + fano - rho) / ((fano - 1.0) * (1.0 + rho * rho));
        eta2 = eta1 / (1.0 + rho) * (std::sqrt(inner) - 1.0);
        eta2 = std::clamp(eta2, 0.0, 1.0);
    }
    report.eta2_opt = eta2;
    report.regime = regime_of(eta2);
    report.nrf_at_opt = nrf_full(fano, linked_model(eta1, eta2, fano, rho)).total;
    return report;
}

ScalarMinimum minimize_on_unit_interval(const std::function<double(double)>& objective,
                                        double coarse_step, double tolerance) {
    const auto cells = static_cast<std::size_t>(std::llround(1.0 / coarse_step));
    const double h = 1.0 / static_cast<double>(cells);
    auto f = [&](double x) { return finite_or_inf(objective(x)); };

    std::vector<double> values(cells + 1);
    std::size_t best = 0;
    double fmax = -kInf;
    for (std::size_t i = 0; i <= cells; ++i) {
        values[i] = f(static_cast<double>(i) * h);
        if (values[i] < values[best]) best = i;
        if (std::isfinite(values[i])) fmax = std::max(fmax, values[i]);
    }
    const double fmin = values[best];
    if (!std::isfinite(fmin)) return ScalarMinimum{0.0, fmin};
    auto grid_x = [&](std::size_t i) { return i == cells ? 1.0 : static_cast<double>(i) * h; };
    if (fmax - fmin <= 1e-14 * (1.0 + std::abs(fmin))) {
        return ScalarMinimum{grid_x(best), fmin};
    }

    const double bracket_lo = grid_x(best == 0 ? 0 : best - 1);
    const double bracket_hi = grid_x(std::min(best + 1, cells));
    double lo = bracket_lo;
    double hi = bracket_hi;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = f(a);
    double fb = f(b);
    while (hi - lo > tolerance) {
        if (fa <= fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }

    // Ascending x so that ties resolve toward the smaller eta2; the bracket
    // ends keep exact boundary optima (0 or 1) representable.
    ScalarMinimum result{bracket_lo, f(bracket_lo)};
    for (double x : {lo, 0.5 * (lo + hi), hi, grid_x(best), bracket_hi}) {
        const double fx = f(x);
        if (fx < result.value || (fx == result.value && x < result.x)) {
            result = ScalarMinimum{x, fx};
        }
    }
    return result;
}

OptimumReport numeric_min_eta2(double fano, const ChannelNoiseModel& noise) {
    require_fano(fano);
    ChannelNoiseModel fixed = noise;
    fixed.eta2 = 0.0;
    fixed.validate();

    auto objective = [&](double eta2) {
        ChannelNoiseModel trial = fixed;
        trial.eta2 = eta2;
        try {
            return nrf_full(fano, trial).total;
        } catch (const DegenerateError&) {
            return kInf;
        }
    };
    const ScalarMinimum min = minimize_on_unit_interval(objective);

    OptimumReport report;
    report.eta2_opt = min.x;
    report.regime = regime_of(min.x);
    report.nrf_at_opt = min.value;
    const bool no_optical = fixed.rho1 == 0.0 && fixed.rho2 == 0.0;
    const bool no_detector = fixed.d1 == 0.0 && fixed.d2 == 0.0;
    if (no_optical && no_detector && fixed.eta1 > 0.0) {
        report.threshold = threshold_noiseless(fixed.eta1);
    } else if (no_detector && fixed.rho1 == 0.0 && fixed.eta1 > 0.0 &&
               fixed.fano_rho2 == linked_optical_fano(fano, fixed.rho2)) {
        report.threshold = threshold_noisy(fixed.eta1, fixed.rho2);
    } else {
        report.threshold = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

OptimumReport numeric_min_eta2(const TwinBeamSource& source, const ChannelNoiseModel& noise) {
    source.validate();
    return numeric_min_eta2(source.fano, noise);
}

}  // namespace twinbeam
