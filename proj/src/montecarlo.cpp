#include "phasecorr/montecarlo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <thread>

namespace phasecorr {

void validate(const SimConfig& config) {
    if (!(config.dt > 0.0)) throw std::domain_error("SimConfig: dt must be positive");
    if (!(config.window_T > 0.0)) throw std::domain_error("SimConfig: window_T must be positive");
    if (config.window_T < two_pi && config.dt > config.window_T / 100.0)
        throw std::domain_error("SimConfig: dt must be <= window_T/100 for sub-period windows");
    if (config.trials < 2) throw std::domain_error("SimConfig: trials must be >= 2");
    if (!(config.burn_in >= 0.0)) throw std::domain_error("SimConfig: burn_in must be >= 0");
    if (config.workers < 0) throw std::domain_error("SimConfig: workers must be >= 0");
}

const char* to_string(Estimator e) {
    switch (e) {
    case Estimator::pearson_counts: return "pearson_counts";
    case Estimator::pearson_total_phase: return "pearson_total_phase";
    case Estimator::phi_binary: return "phi_binary";
    }
    return "unknown";
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::pair<double, double> correlated_noise_step(double c, double dt, std::mt19937_64& engine,
                                                std::normal_distribution<double>& normal) {
    const double z_a = normal(engine);
    const double z_b = normal(engine);
    const double z_c = normal(engine);
    const double sq_dt = std::sqrt(dt);
    const double shared = std::sqrt(c) * z_c;
    const double indep = std::sqrt(1.0 - c);
    return {sq_dt * (shared + indep * z_a), sq_dt * (shared + indep * z_b)};
}

namespace {

// Constants hoisted out of the hot per-step path.
struct StepKernel {
    double alpha, sin_alpha;
    double dt, sqrt_dt, sigma;
    double sqrt_c, sqrt_1mc;
    double half_sigma2;
    bool ito;

    explicit StepKernel(const SimConfig& config)
        : alpha(config.shape.alpha()),
          sin_alpha(config.shape.sin_alpha()),
          dt(config.dt),
          sqrt_dt(std::sqrt(config.dt)),
          sigma(config.noise.sigma),
          sqrt_c(std::sqrt(config.noise.c)),
          sqrt_1mc(std::sqrt(1.0 - config.noise.c)),
          half_sigma2(0.5 * config.noise.sigma * config.noise.sigma),
          ito(config.include_ito_drift) {}

    StepResult step(double th1, double th2, std::mt19937_64& engine,
                    std::normal_distribution<double>& normal) const {
        // Same draw order as correlated_noise_step: z_A, z_B, z_C.
        const double z_a = normal(engine);
        const double z_b = normal(engine);
        const double z_c = normal(engine);
        const double shared = sqrt_c * z_c;
        const double xi1 = sqrt_dt * (shared + sqrt_1mc * z_a);
        const double xi2 = sqrt_dt * (shared + sqrt_1mc * z_b);

        const double d1 = -std::sin(th1 + alpha) + sin_alpha;
        const double d2 = -std::sin(th2 + alpha) + sin_alpha;

        double drift1 = 1.0, drift2 = 1.0;
        if (ito) {
            drift1 += half_sigma2 * (-std::cos(th1 + alpha)) * d1;
            drift2 += half_sigma2 * (-std::cos(th2 + alpha)) * d2;
        }

        StepResult r{th1 + dt * drift1 + sigma * d1 * xi1,
                     th2 + dt * drift2 + sigma * d2 * xi2, 0, 0};
        while (r.theta1 >= two_pi) { r.theta1 -= two_pi; ++r.cross1; }
        while (r.theta1 < 0.0)     { r.theta1 += two_pi; --r.cross1; }
        while (r.theta2 >= two_pi) { r.theta2 -= two_pi; ++r.cross2; }
        while (r.theta2 < 0.0)     { r.theta2 += two_pi; --r.cross2; }
        return r;
    }
};

} // namespace

StepResult step_pair(double theta1, double theta2, const SimConfig& config,
                     std::mt19937_64& engine, std::normal_distribution<double>& normal) {
    return StepKernel(config).step(theta1, theta2, engine, normal);
}

PhaseDiffSampler::PhaseDiffSampler(const PrcShape& shape, double c) {
    const int n = 4096;
    phi_ = Eigen::ArrayXd::LinSpaced(n + 1, 0.0, two_pi);
    const Eigen::ArrayXd p = stationary_density(shape, c, phi_);
    cdf_.resize(n + 1);
    cdf_(0) = 0.0;
    const double h = two_pi / n;
    for (int k = 0; k < n; ++k) cdf_(k + 1) = cdf_(k) + 0.5 * h * (p(k) + p(k + 1));
    cdf_ /= cdf_(n); // exact normalization of the table
}

double PhaseDiffSampler::operator()(double u01) const {
    const double* begin = cdf_.data();
    const double* end = begin + cdf_.size();
    const double* it = std::upper_bound(begin, end, u01);
    if (it == begin) return 0.0;
    if (it == end) return phi_(cdf_.size() - 1);
    const auto k = static_cast<Eigen::Index>(it - begin) - 1;
    const double lo = cdf_(k), hi = cdf_(k + 1);
    const double frac = hi > lo ? (u01 - lo) / (hi - lo) : 0.0;
    return phi_(k) + frac * (phi_(k + 1) - phi_(k));
}

namespace {

TrialRecord run_one_trial(const StepKernel& kernel, const SimConfig& config,
                          const PhaseDiffSampler* sampler, long n_burn, long n_window,
                          std::uint64_t trial_index) {
    std::mt19937_64 engine(substream_seed(config.master_seed, trial_index));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    double th1 = two_pi * uniform(engine);
    const double u_phi = uniform(engine);
    double phi0 = 0.0; // degenerate stationary difference at c = 1
    if (config.noise.c < 1.0)
        phi0 = config.analytic_init ? (*sampler)(u_phi) : two_pi * u_phi;
    double th2 = wrap_angle(th1 + phi0);

    for (long k = 0; k < n_burn; ++k) {
        const StepResult r = kernel.step(th1, th2, engine, normal);
        th1 = r.theta1;
        th2 = r.theta2;
    }

    TrialRecord rec;
    for (long k = 0; k < n_window; ++k) {
        const StepResult r = kernel.step(th1, th2, engine, normal);
        rec.total_phase_1 += (r.theta1 - th1) + two_pi * r.cross1;
        rec.total_phase_2 += (r.theta2 - th2) + two_pi * r.cross2;
        rec.spike_count_1 += r.cross1;
        rec.spike_count_2 += r.cross2;
        th1 = r.theta1;
        th2 = r.theta2;
    }
    rec.spiked_1 = rec.spike_count_1 >= 1;
    rec.spiked_2 = rec.spike_count_2 >= 1;
    rec.final_phase_diff = wrap_angle(th2 - th1);

    assert(std::abs(rec.total_phase_1 / two_pi - static_cast<double>(rec.spike_count_1)) <=
           1.0 + config.dt / two_pi);
    assert(std::abs(rec.total_phase_2 / two_pi - static_cast<double>(rec.spike_count_2)) <=
           1.0 + config.dt / two_pi);
    return rec;
}

} // namespace

std::vector<TrialRecord> run_trials(const SimConfig& config) {
    validate(config);

    const StepKernel kernel(config);
    std::unique_ptr<PhaseDiffSampler> sampler;
    if (config.analytic_init && config.noise.c < 1.0)
        sampler = std::make_unique<PhaseDiffSampler>(config.shape, config.noise.c);

    const long n_burn = std::lround(config.burn_in / config.dt);
    const long n_window = std::lround(config.window_T / config.dt);

    std::vector<TrialRecord> records(config.trials);

    int workers = config.workers > 0 ? config.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, config.trials);

    auto run_range = [&](int lo, int hi) {
        for (int t = lo; t < hi; ++t)
            records[t] = run_one_trial(kernel, config, sampler.get(), n_burn, n_window,
                                       static_cast<std::uint64_t>(t));
    };

    if (workers == 1) {
        run_range(0, config.trials);
        return records;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const int chunk = (config.trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(config.trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
            try {
                run_range(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return records;
}

namespace {

CorrelationEstimate pearson_with_bootstrap(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                                           Estimator tag) {
    const auto n = x.size();
    if (n < 2) throw std::domain_error("correlation estimate needs at least 2 records");

    auto pearson = [](const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
        const Eigen::ArrayXd da = a - a.mean();
        const Eigen::ArrayXd db = b - b.mean();
        const double sab = (da * db).sum();
        const double saa = (da * da).sum();
        const double sbb = (db * db).sum();
        if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return sab / std::sqrt(saa * sbb);
    };

    const double value = pearson(x, y);
    if (std::isnan(value))
        throw degenerate_error(std::string(to_string(tag)) +
                               ": degenerate variance (a column is constant)");

    // Nonparametric bootstrap, 200 resamples. Seeded by a fixed constant so
    // identical record arrays always give identical standard errors.
    constexpr int resamples = 200;
    std::mt19937_64 engine(substream_seed(0x626F6F7473747261ULL, static_cast<std::uint64_t>(n)));
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    Eigen::ArrayXd rx(n), ry(n);
    Eigen::ArrayXd stats(resamples);
    int valid = 0;
    for (int b = 0; b < resamples; ++b) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index j = pick(engine);
            rx(i) = x(j);
            ry(i) = y(j);
        }
        const double r = pearson(rx, ry);
        if (!std::isnan(r)) stats(valid++) = r;
    }
    if (valid < 2)
        throw degenerate_error(std::string(to_string(tag)) + ": bootstrap degenerate");
    const auto head = stats.head(valid);
    const double mean = head.mean();
    const double se = std::sqrt((head - mean).square().sum() / (valid - 1));

    return {std::clamp(value, -1.0, 1.0), se, static_cast<int>(n), tag};
}

} // namespace

CorrelationEstimate estimate_spike_corr(std::span<const TrialRecord> records) {
    Eigen::ArrayXd x(records.size()), y(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        x(i) = static_cast<double>(records[i].spike_count_1);
        y(i) = static_cast<double>(records[i].spike_count_2);
    }
    return pearson_with_bootstrap(x, y, Estimator::pearson_counts);
}

CorrelationEstimate estimate_total_phase_corr(std::span<const TrialRecord> records) {
    Eigen::ArrayXd x(records.size()), y(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        x(i) = records[i].total_phase_1;
        y(i) = records[i].total_phase_2;
    }
    return pearson_with_bootstrap(x, y, Estimator::pearson_total_phase);
}

CorrelationEstimate estimate_binary_corr(std::span<const TrialRecord> records) {
    Eigen::ArrayXd x(records.size()), y(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        x(i) = records[i].spiked_1 ? 1.0 : 0.0;
        y(i) = records[i].spiked_2 ? 1.0 : 0.0;
    }
    return pearson_with_bootstrap(x, y, Estimator::phi_binary);
}

PhaseHistogram empirical_phase_density(const SimConfig& config, int n_bins) {
    validate(config);
    if (n_bins < 32) throw std::domain_error("empirical_phase_density: n_bins must be >= 32");

    const StepKernel kernel(config);
    std::mt19937_64 engine(substream_seed(config.master_seed, 0x64656E73ULL));
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    double th1 = two_pi * uniform(engine);
    const double u_phi = uniform(engine);
    double phi0 = 0.0;
    if (config.noise.c < 1.0) {
        if (config.analytic_init) {
            PhaseDiffSampler sampler(config.shape, config.noise.c);
            phi0 = sampler(u_phi);
        } else {
            phi0 = two_pi * u_phi;
        }
    }
    double th2 = wrap_angle(th1 + phi0);

    const long n_burn = std::lround(config.burn_in / config.dt);
    const long n_total = std::lround(config.window_T / config.dt);
    const long stride = std::max(1L, std::lround(two_pi / config.dt)); // one sample per period

    std::vector<long long> counts(n_bins, 0);
    const double bin_width = two_pi / n_bins;
    long long samples = 0;

    for (long k = 0; k < n_burn; ++k) {
        const StepResult r = kernel.step(th1, th2, engine, normal);
        th1 = r.theta1;
        th2 = r.theta2;
    }
    for (long k = 1; k <= n_total; ++k) {
        const StepResult r = kernel.step(th1, th2, engine, normal);
        th1 = r.theta1;
        th2 = r.theta2;
        if (k % stride == 0) {
            const double phi = wrap_angle(th2 - th1);
            int bin = static_cast<int>(phi / bin_width);
            if (bin >= n_bins) bin = n_bins - 1;
            ++counts[bin];
            ++samples;
        }
    }

    PhaseHistogram hist;
    hist.centers = Eigen::ArrayXd::LinSpaced(n_bins, 0.5 * bin_width, two_pi - 0.5 * bin_width);
    hist.density.resize(n_bins);
    for (int b = 0; b < n_bins; ++b)
        hist.density(b) = samples > 0 ? counts[b] / (static_cast<double>(samples) * bin_width) : 0.0;
    hist.samples = samples;
    return hist;
}

} // namespace phasecorr
