// Monte Carlo simulation of two identical phase oscillators driven by
// partially correlated white noise:
//
//     dtheta_i = (1 + drift_i) dt + sigma * Delta(theta_i) dW_i,
//     dW_i built from three independent Wiener increments so that
//     corr(dW_1, dW_2) = c,
//
// integrated by Euler-Maruyama. The optional drift term sigma^2/2 * D'(th)D(th)
// is the Ito correction; the default omits it to match the order-sigma system
// the analytic formulas describe. An oscillator spikes when its unwrapped
// phase crosses a multiple of 2*pi; spike counts use net (signed) crossings so
// that |total_phase/2pi - count| <= 1 holds even when noise jitters the phase
// backwards across a boundary.
//
// Determinism contract: trial k draws from an independent substream seeded by
// substream_seed(master_seed, k) (a splitmix64 finalizer mix), so results are
// bit-identical for a fixed master seed regardless of how many worker threads
// execute the trial loop.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "phasecorr/density.hpp"
#include "phasecorr/errors.hpp"
#include "phasecorr/prc.hpp"

namespace phasecorr {

struct SimConfig {
    PrcShape shape;
    NoiseSpec noise;
    double dt = two_pi * 1e-3;
    double burn_in = 40.0 * pi; // 20 periods; pair with analytic_init=true
    double window_T = 0.0;
    int trials = 0;
    std::uint64_t master_seed = 0;
    bool include_ito_drift = false;
    bool analytic_init = true; // draw initial phase difference from the stationary density
    int workers = 0;           // 0 = hardware concurrency
};

void validate(const SimConfig& config); // throws std::domain_error on bad fields

struct TrialRecord {
    long long spike_count_1 = 0;
    long long spike_count_2 = 0;
    double total_phase_1 = 0.0; // q_i = unwrapped phase traversed in the window
    double total_phase_2 = 0.0;
    bool spiked_1 = false;
    bool spiked_2 = false;
    double final_phase_diff = 0.0; // theta2 - theta1 wrapped to [0, 2pi)

    bool operator==(const TrialRecord&) const = default;
};

enum class Estimator { pearson_counts, pearson_total_phase, phi_binary };

const char* to_string(Estimator e);

struct CorrelationEstimate {
    double value;     // in [-1, 1]
    double std_error; // nonparametric bootstrap, 200 resamples
    int n;
    Estimator estimator;
};

/// Fixed documented substream mix: splitmix64 finalizer of
/// master + (index + 1) * 0x9E3779B97F4A7C15.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

/// One pair of correlated Wiener increments over a step dt. Draws exactly
/// three standard normals (z_A, z_B, z_C in that order) and returns
///   xi_i = sqrt(dt) * (sqrt(c) * z_C + sqrt(1-c) * z_{A or B}),
/// so each increment has variance dt and the pair has correlation c.
std::pair<double, double> correlated_noise_step(double c, double dt, std::mt19937_64& engine,
                                                std::normal_distribution<double>& normal);

struct StepResult {
    double theta1, theta2; // wrapped back into [0, 2pi)
    int cross1, cross2;    // net 2pi-boundary crossings this step (+1, 0 or -1)
};

/// Single Euler-Maruyama update of the oscillator pair.
StepResult step_pair(double theta1, double theta2, const SimConfig& config,
                     std::mt19937_64& engine, std::normal_distribution<double>& normal);

/// Inverse-CDF sampler for the stationary phase-difference density, built on a
/// 4096-node grid with linear interpolation between cumulative nodes.
class PhaseDiffSampler {
public:
    PhaseDiffSampler(const PrcShape& shape, double c);
    double operator()(double u01) const; // maps (0,1) to [0, 2pi)

private:
    Eigen::ArrayXd phi_;
    Eigen::ArrayXd cdf_;
};

/// Run config.trials independent trials: initialize at stationarity (analytic
/// seeding or uniform), integrate the burn-in, then observe a window of length
/// window_T, recording counts, total phases and binary spike flags.
std::vector<TrialRecord> run_trials(const SimConfig& config);

CorrelationEstimate estimate_spike_corr(std::span<const TrialRecord> records);
CorrelationEstimate estimate_total_phase_corr(std::span<const TrialRecord> records);
/// Phi coefficient of the binary spike indicators; callers must only use this
/// for windows no longer than one period.
CorrelationEstimate estimate_binary_corr(std::span<const TrialRecord> records);

/// Normalized histogram (a density, per radian) of the phase difference
/// sampled once per period along a single long trajectory.
struct PhaseHistogram {
    Eigen::ArrayXd centers; // bin centers in [0, 2pi)
    Eigen::ArrayXd density; // bin mass / bin width; sums to 1 after * width
    long long samples = 0;
};

PhaseHistogram empirical_phase_density(const SimConfig& config, int n_bins);

} // namespace phasecorr
