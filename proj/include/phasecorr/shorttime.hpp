// Spike-count correlation over windows shorter than one period, from the
// joint spiking probabilities of binary per-window indicators.
//
// With both phases expanded to lowest order in the noise, oscillator i spikes
// in [0,T] iff theta_i(0) > 2pi - T, so the joint probability f11 reduces to a
// window integral of the phase-difference density. Changing variables to
// u = y - x collapses the square to
//     f11(T) = (1/2pi) int_{-T}^{T} (T - |u|) P(u) du
//            = (1/pi)  int_0^T (T - u) P(u) du        (P even),
// evaluated here by composite Simpson. The 2-D form is kept in `quadrature`
// purely as a cross-check oracle.

#pragma once

#include <cmath>

#include <Eigen/Core>

#include "phasecorr/density.hpp"
#include "phasecorr/errors.hpp"
#include "phasecorr/prc.hpp"

namespace phasecorr {

struct JointSpikeProbs {
    double f00, f01, f10, f11;
    double window; // T in radians, in (0, 2pi)
};

namespace detail {
inline constexpr int shorttime_panels = 16384; // Simpson panels for f11

inline void require_window(double T) {
    if (!(T > 0.0 && T < two_pi))
        throw std::domain_error("window length T must lie strictly inside (0, 2pi)");
}
} // namespace detail

inline JointSpikeProbs joint_spike_probs(const PrcShape& shape, double c, double T) {
    detail::require_window(T);
    detail::require_correlation(c);

    const int n = detail::shorttime_panels;
    const double h = T / n;
    const Eigen::ArrayXd u = Eigen::ArrayXd::LinSpaced(n + 1, 0.0, T);
    Eigen::ArrayXd w = Eigen::ArrayXd::Constant(n + 1, h / 3.0);
    for (int k = 1; k < n; k += 2) w(k) *= 4.0;
    for (int k = 2; k < n; k += 2) w(k) *= 2.0;

    const Eigen::ArrayXd integrand = (T - u) * stationary_density(shape, c, u);
    const double f11 = (w * integrand).sum() / pi;

    const double marginal = T / two_pi; // theta_i(0) uniform
    const double f10 = marginal - f11;
    const double f00 = 1.0 - 2.0 * f10 - f11;
    return {f00, f10, f10, f11, T};
}

/// Correlation of the two binary spike indicators:
/// (f11 - (T/2pi)^2) / ((T/2pi)(1 - T/2pi)). Degenerate at T = 0 and T = 2pi.
inline double cout_short(const PrcShape& shape, double c, double T) {
    const JointSpikeProbs f = joint_spike_probs(shape, c, T);
    const double p = T / two_pi;
    return (f.f11 - p * p) / (p * (1.0 - p));
}

/// Initial slope of cout_short in T: P(0; c, alpha) - 1/(2pi).
inline double cout_short_slope(const PrcShape& shape, double c) {
    return stationary_density(shape, c, 0.0) - 1.0 / two_pi;
}

/// Ratio of the type II (alpha=0) to type I (alpha=pi/2) initial slopes;
/// tends to 3 as c -> 0.
inline double susceptibility_ratio(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("susceptibility_ratio: c must lie in (0, 1)");
    if (c < 1e-12)
        throw degenerate_error("susceptibility_ratio: type I slope underflows for c < 1e-12");
    const double slope_type2 = cout_short_slope(PrcShape(0.0), c);
    const double slope_type1 = cout_short_slope(PrcShape(pi / 2.0), c);
    if (slope_type1 == 0.0)
        throw degenerate_error("susceptibility_ratio: type I slope vanished");
    return slope_type2 / slope_type1;
}

} // namespace phasecorr
