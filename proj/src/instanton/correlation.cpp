#include "sqm/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqm/errors.hpp"
#include "sqm/kernels.hpp"

namespace sqm {

CorrelationEstimate estimate_correlation(std::span<const FrequencyField> fields,
                                         const ModelConfig& cfg, int max_lag) {
    if (cfg.dimension != 1 || cfg.boundary != Boundary::periodic)
        throw ValidationError("estimate_correlation expects a periodic 1D config");
    if (fields.size() < 20)
        throw ValidationError("estimate_correlation needs at least 20 realizations");
    const std::uint64_t h = cfg.hash();
    for (const auto& f : fields)
        if (f.config_hash != h)
            throw ValidationError("estimate_correlation: field from a different config");

    const int n = cfg.n_sites;
    if (max_lag <= 0) {
        const double kappa = cfg.kappa();
        const double guide = std::isfinite(kappa) ? 8.0 * 2.0 * kappa * kappa : n / 2.0;
        max_lag = static_cast<int>(std::min<double>(n / 2.0, std::max(guide, 10.0)));
    }
    if (max_lag > n / 2) throw ValidationError("estimate_correlation: max_lag beyond L/2");

    const int bins = max_lag + 1;
    const int reals = static_cast<int>(fields.size());
    std::vector<double> sum(bins, 0.0), sumsq(bins, 0.0), g(bins), delta(n);
    for (const auto& f : fields) {
        if (static_cast<int>(f.frequencies.size()) != n)
            throw ValidationError("estimate_correlation: field length mismatch");
        for (int j = 0; j < n; ++j) delta[j] = f.frequencies[j] - 1.0;
        kernels::periodic_autocorr(delta.data(), n, max_lag, g.data());
        for (int m = 0; m < bins; ++m) {
            sum[m] += g[m];
            sumsq[m] += g[m] * g[m];
        }
    }

    CorrelationEstimate est;
    est.n_realizations = reals;
    est.config_hash = h;
    est.separations.resize(bins);
    est.r_values.resize(bins);
    est.std_errors.resize(bins);
    for (int m = 0; m < bins; ++m) {
        est.separations[m] = m;
        const double mean = sum[m] / reals;
        est.r_values[m] = mean;
        const double var = std::max(0.0, (sumsq[m] - reals * mean * mean) / (reals - 1));
        est.std_errors[m] = std::sqrt(var / reals);
    }
    return est;
}

namespace {

// A is linear in the model, so solve it in closed form per candidate r0.
std::pair<double, double> chi2_at(const CorrelationEstimate& est,
                                  const std::vector<double>& weights, double r0) {
    double swyf = 0.0, swff = 0.0;
    const int bins = static_cast<int>(est.separations.size());
    std::vector<double> f(bins);
    for (int m = 0; m < bins; ++m) {
        const double x = std::abs(est.separations[m]);
        f[m] = (1.0 + x / r0) * std::exp(-x / r0);
        swyf += weights[m] * est.r_values[m] * f[m];
        swff += weights[m] * f[m] * f[m];
    }
    const double a = swff > 0.0 ? swyf / swff : 0.0;
    double chi2 = 0.0;
    for (int m = 0; m < bins; ++m) {
        const double d = est.r_values[m] - a * f[m];
        chi2 += weights[m] * d * d;
    }
    return {chi2, a};
}

} // namespace

R0Fit fit_r0(const CorrelationEstimate& est, double scan_max) {
    const int bins = static_cast<int>(est.separations.size());
    int finite = 0;
    for (int m = 0; m < bins; ++m)
        if (std::isfinite(est.r_values[m]) && std::isfinite(est.std_errors[m])) ++finite;
    if (finite < 10)
        throw ValidationError("fit_r0 needs at least 10 bins with finite values");

    // Inverse-variance weights; exact bins (zero error) get the largest
    // finite weight present instead of infinity.
    std::vector<double> w(bins, 0.0);
    double w_cap = 0.0;
    for (int m = 0; m < bins; ++m) {
        const double se = est.std_errors[m];
        if (se > 0.0 && std::isfinite(se)) w_cap = std::max(w_cap, 1.0 / (se * se));
    }
    if (w_cap == 0.0) w_cap = 1.0;
    for (int m = 0; m < bins; ++m) {
        const double se = est.std_errors[m];
        w[m] = (se > 0.0 && std::isfinite(se)) ? std::min(1.0 / (se * se), 1e300) : w_cap;
    }

    const double lo_bound = 0.1, hi_bound = std::max(scan_max, 1.0);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = lo_bound, hi = hi_bound;
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = chi2_at(est, w, c1).first, f2 = chi2_at(est, w, c2).first;
    for (int it = 0; it < 160; ++it) {
        if (f1 < f2) {
            hi = c2; c2 = c1; f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = chi2_at(est, w, c1).first;
        } else {
            lo = c1; c1 = c2; f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = chi2_at(est, w, c2).first;
        }
    }

    R0Fit fit;
    fit.r0 = 0.5 * (lo + hi);
    auto [chi2, a] = chi2_at(est, w, fit.r0);
    fit.amplitude = a;
    double denom = 0.0;
    for (int m = 0; m < bins; ++m) denom += w[m] * est.r_values[m] * est.r_values[m];
    fit.residual = denom > 0.0 ? std::sqrt(chi2 / denom) : std::numeric_limits<double>::quiet_NaN();
    const double span = hi_bound - lo_bound;
    fit.boundary_pinned =
        fit.r0 - lo_bound < 1e-6 * span || hi_bound - fit.r0 < 1e-6 * span;
    return fit;
}

} // namespace sqm
