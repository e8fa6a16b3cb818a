// Quadrature helpers: the periodic trapezoid rule (spectrally accurate for
// smooth periodic integrands) and the direct 2-D window integral used as a
// cross-check oracle for the reduced joint-spiking integral.

#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "phasecorr/prc.hpp"

namespace phasecorr {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Uniform grid phi_k = 2*pi*k/n, k = 0..n-1, on the circle.
struct PeriodicGrid {
    int n;
    double spacing;

    static PeriodicGrid of(int n) {
        if (!is_power_of_two(n) || n < 64)
            throw std::domain_error("PeriodicGrid: n must be a power of two >= 64");
        return PeriodicGrid{n, two_pi / n};
    }

    Eigen::ArrayXd nodes() const {
        return Eigen::ArrayXd::LinSpaced(n, 0.0, spacing * (n - 1));
    }
};

// On a periodic domain every trapezoid weight collapses to the spacing.
template <class Derived>
double periodic_trapezoid(const Eigen::ArrayBase<Derived>& samples) {
    const auto n = samples.size();
    if (n < 2) throw std::domain_error("periodic_trapezoid: need at least 2 samples");
    return (two_pi / static_cast<double>(n)) * samples.sum();
}

// (1/2pi) int_{2pi-T}^{2pi} int_{2pi-T}^{2pi} density(y - x) dx dy by a direct
// 2-D composite trapezoid with n panels per axis. Deliberately naive: it is
// the independent route against which the reduced 1-D computation is checked.
template <class Density>
double window_double_integral(Density&& density, double T, int n) {
    if (!(T > 0.0 && T <= two_pi))
        throw std::domain_error("window_double_integral: T must lie in (0, 2pi]");
    if (n < 2) throw std::domain_error("window_double_integral: need n >= 2 panels");

    const double h = T / n;
    const double a = two_pi - T;
    Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(n + 1, a, two_pi);
    Eigen::ArrayXd w = Eigen::ArrayXd::Constant(n + 1, h);
    w(0) *= 0.5;
    w(n) *= 0.5;

    double total = 0.0;
    Eigen::ArrayXd row(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double y = x(i);
        for (int j = 0; j <= n; ++j) row(j) = density(y - x(j));
        total += w(i) * (w * row).sum();
    }
    return total / two_pi;
}

} // namespace phasecorr
