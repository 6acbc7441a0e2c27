#include "sqm/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sqm/errors.hpp"
#include "sqm/rng.hpp"

namespace sqm {

namespace {

// Energy change of moving site i to value w, with neighbors by boundary rule.
// On a periodic 2-ring both bonds connect the same pair, so the gradient
// change is counted twice, matching the full-sum convention.
double site_delta_e(const std::vector<double>& omega, const std::vector<double>& pin,
                    const GibbsEnergy& en, Boundary boundary, std::size_t i, double w) {
    const std::size_t n = omega.size();
    const double old_w = omega[i];
    double grad_old = 0.0, grad_new = 0.0;
    const bool periodic = boundary == Boundary::periodic;
    if (i > 0 || periodic) {
        const double left = omega[i == 0 ? n - 1 : i - 1];
        grad_old += std::abs(old_w - left);
        grad_new += std::abs(w - left);
    }
    if (i + 1 < n || periodic) {
        const double right = omega[(i + 1) % n];
        grad_old += std::abs(right - old_w);
        grad_new += std::abs(right - w);
    }
    const double pin_old = (old_w - pin[i]) * (old_w - pin[i]);
    const double pin_new = (w - pin[i]) * (w - pin[i]);
    return en.coupling_weight * (grad_new - grad_old) +
           en.curvature_weight * (pin_new - pin_old);
}

} // namespace

ChainResult sample_mcmc(const DisorderRealization& real, const ModelConfig& cfg,
                        const ChainOptions& opts, std::uint64_t seed) {
    if (opts.burnin_sweeps < 1 || opts.sweeps < 1 || opts.thin < 1)
        throw ValidationError("sample_mcmc: sweeps, burn-in and thinning must be >= 1");
    const GibbsEnergy en = GibbsEnergy::from_config(cfg);
    const std::size_t n = real.splittings.size();
    std::vector<double> omega = real.splittings;  // start at the pinning minimum
    CounterRng rng = CounterRng::stream(seed, 0x6d636d63);

    // Proposal width: thermal site scale, then tuned on burn-in blocks.
    double step = 1.5 * std::sqrt(cfg.temperature);
    const int block = 50;

    ChainResult result;
    std::vector<double> mean_series;
    mean_series.reserve(opts.sweeps);
    long accepted = 0, proposed = 0;

    auto sweep = [&](bool tuning_phase) {
        for (std::size_t i = 0; i < n; ++i) {
            const double w = omega[i] + step * rng.next_gaussian();
            const double de = site_delta_e(omega, real.splittings, en, cfg.boundary, i, w);
            if (!std::isfinite(de))
                throw SolverError("sample_mcmc: non-finite energy change");
            const double u = rng.next_double();
            const bool accept = de <= 0.0 || u < std::exp(-de);
            if (opts.proposal_log && !tuning_phase) opts.proposal_log(de, u, accept);
            if (accept) {
                omega[i] = w;
                ++accepted;
            }
            ++proposed;
        }
    };

    for (int s = 0; s < opts.burnin_sweeps; ++s) {
        sweep(true);
        if ((s + 1) % block == 0) {
            const double acc = static_cast<double>(accepted) / proposed;
            step *= std::exp(std::clamp(acc - opts.target_acceptance, -0.5, 0.5));
            accepted = proposed = 0;
        }
    }

    accepted = proposed = 0;
    for (int s = 0; s < opts.sweeps; ++s) {
        sweep(false);
        mean_series.push_back(std::accumulate(omega.begin(), omega.end(), 0.0) / n);
        if ((s + 1) % opts.thin == 0) {
            FrequencyField f;
            f.frequencies = omega;
            f.method = FieldMethod::mcmc;
            f.realization_seed = real.seed;
            f.config_hash = real.config_hash;
            result.fields.push_back(std::move(f));
        }
    }

    result.acceptance_rate = static_cast<double>(accepted) / proposed;
    result.step = step;
    result.tau_int = integrated_autocorrelation(mean_series);
    if (result.acceptance_rate < 0.05 || result.acceptance_rate > 0.95)
        throw TuningError("sample_mcmc: acceptance " + std::to_string(result.acceptance_rate) +
                          " outside [0.05, 0.95] after tuning");
    return result;
}

double integrated_autocorrelation(const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 8) return 1.0;
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = series[i] - mean;
    double c0 = 0.0;
    for (double v : d) c0 += v * v;
    c0 /= n;
    if (c0 <= 0.0) return 1.0;

    double tau = 1.0;
    for (std::size_t t = 1; t < n / 2; ++t) {
        double ct = 0.0;
        for (std::size_t i = 0; i + t < n; ++i) ct += d[i] * d[i + t];
        ct /= (n - t) * c0;
        tau += 2.0 * ct;
        if (static_cast<double>(t) >= 5.0 * tau) break;  // Sokal window
    }
    return std::max(tau, 1.0);
}

} // namespace sqm
