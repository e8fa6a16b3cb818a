// Stationary density of the phase difference between two oscillators driven
// by partially correlated white noise.
//
// With h the PRC autocorrelation and G(x) = 1 - c*h(x)/h(0), the stationary
// density is P = N/G with N = 1/int(1/G). For the sinusoidal PRC family this
// has the closed form
//     P(phi; c, alpha) = sqrt(A^2 - c^2) / (2*pi*(A - c*cos(phi))),
// where A = 2 - c + (c - 1)*cos(2*alpha). The radicand factors as
// (1-c)(2-cos 2a) * (2+(c-1)cos 2a), strictly positive for c < 1.
// P is independent of the noise amplitude (small-sigma limit).

#pragma once

#include <cmath>

#include <Eigen/Core>

#include "phasecorr/errors.hpp"
#include "phasecorr/prc.hpp"
#include "phasecorr/quadrature.hpp"

namespace phasecorr {

struct NoiseSpec {
    double c;     // input correlation in [0, 1]
    double sigma; // noise amplitude >= 0

    NoiseSpec(double c_, double sigma_) : c(c_), sigma(sigma_) {
        if (!(c >= 0.0 && c <= 1.0))
            throw std::domain_error("NoiseSpec: input correlation c must lie in [0, 1]");
        if (!(sigma >= 0.0))
            throw std::domain_error("NoiseSpec: sigma must be >= 0");
    }
};

namespace detail {
inline void require_correlation(double c) {
    if (!(c >= 0.0 && c <= 1.0))
        throw std::domain_error("input correlation c must lie in [0, 1]");
}
// A = 2 - c + (c-1)*cos(2*alpha); A > c for c < 1.
inline double density_pole_offset(const PrcShape& shape, double c) {
    return 2.0 - c + (c - 1.0) * std::cos(2.0 * shape.alpha());
}
} // namespace detail

/// G(x) = 1 - c*h(x)/h(0), the reciprocal shape of the stationary density.
inline double g_function(const PrcShape& shape, double c, double x) {
    detail::require_correlation(c);
    const double g = 1.0 - c * autocorr(shape, x) / autocorr(shape, 0.0);
    if (g <= 0.0)
        throw degenerate_error("g_function: G vanishes (c = 1 at zero lag); density is degenerate");
    return g;
}

/// Closed-form stationary density of the phase difference, per radian.
inline double stationary_density(const PrcShape& shape, double c, double phi) {
    detail::require_correlation(c);
    if (c == 1.0)
        throw degenerate_error(
            "stationary_density: c = 1 gives a delta distribution; not representable");
    const double A = detail::density_pole_offset(shape, c);
    return std::sqrt(A * A - c * c) / (two_pi * (A - c * std::cos(phi)));
}

template <class Derived>
Eigen::ArrayXd stationary_density(const PrcShape& shape, double c,
                                  const Eigen::ArrayBase<Derived>& phi) {
    detail::require_correlation(c);
    if (c == 1.0)
        throw degenerate_error(
            "stationary_density: c = 1 gives a delta distribution; not representable");
    const double A = detail::density_pole_offset(shape, c);
    return std::sqrt(A * A - c * c) / (two_pi * (A - c * phi.cos()));
}

// Samples of P on a uniform periodic grid phi_k = 2*pi*k/n.
struct DensityGrid {
    int n;
    Eigen::ArrayXd phi;
    Eigen::ArrayXd values;
    double c;
    double alpha;

    double spacing() const { return two_pi / n; }
};

/// Sample the stationary density on a power-of-two grid (n >= 64) and check
/// the grid invariants. For c extremely close to 1 the density is so peaked
/// that coarse grids cannot normalize to 1e-10; such grids are rejected.
inline DensityGrid density_grid(const PrcShape& shape, double c, int n) {
    const PeriodicGrid grid = PeriodicGrid::of(n);
    DensityGrid out{n, grid.nodes(), Eigen::ArrayXd(), c, shape.alpha()};
    out.values = stationary_density(shape, c, out.phi);

    const double mass = periodic_trapezoid(out.values);
    if (std::abs(mass - 1.0) > 1e-10)
        throw degenerate_error("density_grid: grid too coarse to normalize this density; "
                               "increase n (c close to 1 needs n >= 256)");
    return out;
}

} // namespace phasecorr
