// Output correlation of the total elapsed phase over long observation
// windows. The window length cancels exactly, leaving
//     c_out = int_0^{2pi} P(phi) * c * h(phi)/h(0) dphi,
// evaluated by the periodic trapezoid rule. Closed forms exist at the two
// endpoints of the PRC family and for small input correlation.

#pragma once

#include <cmath>

#include <Eigen/Core>

#include "phasecorr/density.hpp"
#include "phasecorr/prc.hpp"
#include "phasecorr/quadrature.hpp"

namespace phasecorr {

enum class LongTimeMethod { quadrature, closed_form_I, closed_form_II, small_c_expansion };

struct LongTimeResult {
    double c_out;
    LongTimeMethod method;
    double c;
    double alpha;
};

namespace detail {
inline constexpr int longtime_nodes = 4096;
}

/// Long-window output correlation by quadrature; c = 1 is the analytic limit
/// c_out = 1 (the density degenerates but the correlation does not).
inline LongTimeResult cout_long(const PrcShape& shape, double c) {
    detail::require_correlation(c);
    if (c == 1.0) return {1.0, LongTimeMethod::quadrature, c, shape.alpha()};
    if (c == 0.0) return {0.0, LongTimeMethod::quadrature, c, shape.alpha()};

    const Eigen::ArrayXd phi = PeriodicGrid::of(detail::longtime_nodes).nodes();
    const double h0 = autocorr(shape, 0.0);
    const Eigen::ArrayXd integrand =
        stationary_density(shape, c, phi) * (c / h0) * autocorr(shape, phi);
    return {periodic_trapezoid(integrand), LongTimeMethod::quadrature, c, shape.alpha()};
}

/// Type I (alpha = pi/2) closed form: 1 - sqrt(3(c-3)(c-1))/3.
inline double cout_long_closed_type1(double c) {
    detail::require_correlation(c);
    return 1.0 - std::sqrt(3.0 * (c - 3.0) * (c - 1.0)) / 3.0;
}

/// Type II (alpha = 0) closed form: 1 - sqrt(1 - c^2).
inline double cout_long_closed_type2(double c) {
    detail::require_correlation(c);
    return 1.0 - std::sqrt(1.0 - c * c);
}

// Lowest order in c, c_out scales with the integral of the PRC
// autocorrelation: expanding 1/G and the normalization to O(c) gives
//     c_out = 2*c*sin(alpha)^2 / (2 + c - (1+c)*cos(2*alpha)).
// Zero at alpha = 0 for every c.
inline double cout_long_small_c(const PrcShape& shape, double c) {
    detail::require_correlation(c);
    const double s2 = shape.sin_alpha() * shape.sin_alpha();
    return 2.0 * c * s2 / (2.0 + c - (1.0 + c) * std::cos(2.0 * shape.alpha()));
}

} // namespace phasecorr
