// Sinusoidal phase-resetting-curve family and its autocorrelation.
//
// Delta(theta; alpha) = -sin(theta + alpha) + sin(alpha) interpolates smoothly
// between a pure sinusoid at alpha = 0 (sign-changing, Andronov-Hopf / "type II")
// and 1 - cos(theta) at alpha = pi/2 (nonnegative, SNIC / "type I").
// The period is 2*pi throughout.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

namespace phasecorr {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Reduce an angle into [0, 2*pi).
inline double wrap_angle(double x) {
    double r = std::fmod(x, two_pi);
    return r < 0.0 ? r + two_pi : r;
}

class PrcShape {
public:
    /// alpha in [0, pi/2]; anything else (including NaN) is rejected.
    explicit PrcShape(double alpha) : alpha_(alpha), sin_alpha_(std::sin(alpha)) {
        if (!(alpha >= 0.0 && alpha <= pi / 2.0))
            throw std::domain_error("PrcShape: alpha must lie in [0, pi/2]");
    }

    double alpha() const noexcept { return alpha_; }
    double sin_alpha() const noexcept { return sin_alpha_; }

private:
    double alpha_;
    double sin_alpha_;
};

/// Phase shift produced by a unit perturbation delivered at phase theta.
inline double delta(const PrcShape& shape, double theta) {
    return -std::sin(theta + shape.alpha()) + shape.sin_alpha();
}

/// d/dtheta of delta.
inline double delta_prime(const PrcShape& shape, double theta) {
    return -std::cos(theta + shape.alpha());
}

template <class Derived>
auto delta(const PrcShape& shape, const Eigen::ArrayBase<Derived>& theta) {
    return -(theta + shape.alpha()).sin() + shape.sin_alpha();
}

template <class Derived>
auto delta_prime(const PrcShape& shape, const Eigen::ArrayBase<Derived>& theta) {
    return -(theta + shape.alpha()).cos();
}

// Autocorrelation h(x) = int_0^{2pi} Delta(y) Delta(y+x) dy. The cross terms of
// the product integrate to zero over a full period, leaving
//   h(x) = pi*cos(x) + 2*pi*sin(alpha)^2.
inline double autocorr(const PrcShape& shape, double x) {
    return pi * std::cos(x) + two_pi * shape.sin_alpha() * shape.sin_alpha();
}

template <class Derived>
auto autocorr(const PrcShape& shape, const Eigen::ArrayBase<Derived>& x) {
    return pi * x.cos() + (two_pi * shape.sin_alpha() * shape.sin_alpha());
}

/// int_0^{2pi} h(x) dx = 4*pi^2*sin(alpha)^2; vanishes exactly for the pure
/// sinusoid (alpha = 0).
inline double autocorr_integral(const PrcShape& shape) {
    return 4.0 * pi * pi * shape.sin_alpha() * shape.sin_alpha();
}

} // namespace phasecorr
