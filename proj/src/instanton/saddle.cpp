#include "sqm/saddle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/kernels.hpp"

namespace sqm {

namespace {

void require_solvable(const ModelConfig& cfg, int want_dim) {
    if (cfg.dimension != want_dim)
        throw ValidationError("saddle solver: config dimension does not match the solver");
    if (cfg.boundary != Boundary::periodic)
        throw ValidationError("saddle solver requires periodic boundary");
    if (!(cfg.coupling > 0.0))
        throw ValidationError("saddle solver requires coupling > 0");
    if (!(cfg.disorder_width > 0.0))
        throw ValidationError("saddle solver requires disorder_width > 0");
}

/// Root of rho^2 * X(rho) = target by log-space bisection in rho = r0^2.
/// rho^2 X(rho) rises from 0 toward sum w/k^2; if the target exceeds that
/// limit no finite radius balances the aggregate and NaN is returned for the
/// caller to mark the synchronized limit.
double solve_rho(const std::function<double(double)>& mode_sum, double target) {
    auto h = [&](double rho) { return rho * rho * mode_sum(rho) - target; };

    double lo = 1e-14, hi = 1e16;
    const double h_lo = h(lo), h_hi = h(hi);
    if (h_hi <= 0.0 && std::isfinite(h_hi))
        return std::numeric_limits<double>::quiet_NaN();  // saturated: r0 -> inf
    if (!(h_lo < 0.0 && h_hi > 0.0)) {
        std::ostringstream os;
        os << "saddle solver: no sign change in rho bracket [" << lo << ", " << hi
           << "]; h(lo) = " << h_lo << ", h(hi) = " << h_hi;
        throw SolverError(os.str());
    }
    // ~60 halvings in log space reach 1e-12 relative.
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * lo; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (h(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

SaddleSolution finish(const ModelConfig& cfg, double rho,
                      const std::function<double(double)>& mode_sum, double target,
                      double side_length) {
    SaddleSolution sol;
    if (std::isnan(rho)) {
        sol.synchronized_limit = true;
        sol.r0 = std::numeric_limits<double>::infinity();
        sol.y0 = std::numeric_limits<double>::infinity();
        sol.x0 = 0.0;
        return sol;
    }
    sol.r0 = std::sqrt(rho);
    sol.y0 = rho / (2.0 * cfg.temperature);
    sol.x0 = mode_sum(rho);

    // First equation: y0 = (K/T) * sqrt(L^d) / (2 sqrt(X0)).
    const double ld = std::pow(side_length, cfg.dimension);
    const double y_check =
        cfg.coupling / cfg.temperature * std::sqrt(ld) / (2.0 * std::sqrt(sol.x0));
    sol.residual_multiplier = std::abs(y_check - sol.y0) / sol.y0;
    sol.residual_mode_sum = std::abs(rho * rho * sol.x0 - target) / target;
    return sol;
}

} // namespace

SaddleSolution solve_saddle(const DisorderRealization& real, const ModelConfig& cfg) {
    require_solvable(cfg, 1);
    const int n = cfg.n_sites;
    const FourierField b = fourier_forward(real.splittings, cfg.boundary, 1.0);

    std::vector<double> w(n), k2(n);
    for (int m = 0; m < n; ++m) {
        const int sn = m <= n / 2 ? m : m - n;
        const double k = b.wavenumber(sn);
        k2[m] = k * k;
        w[m] = 2.0 * std::norm(b.modes[m]);
    }
    double total_weight = 0.0;
    for (double v : w) total_weight += v;
    if (total_weight == 0.0)
        throw SolverError("saddle solver: no sign change in rho bracket [1e-14, 1e+16]: "
                          "the realization has no mode weight (flat disorder)");
    auto mode_sum = [&](double rho) {
        return kernels::screened_mode_sum(w.data(), k2.data(), w.size(), rho);
    };
    const double target = cfg.coupling * cfg.coupling * cfg.length();
    return finish(cfg, solve_rho(mode_sum, target), mode_sum, target, cfg.length());
}

SaddleSolution solve_saddle_averaged(const ModelConfig& cfg) {
    require_solvable(cfg, 1);
    const double s = 2.0 * cfg.disorder_width * cfg.disorder_width;
    const double len = cfg.length();
    // (L / 2 pi) * integral of k^2/(rho k^2+1)^2 over the whole line = L / (4 sqrt(rho^3)).
    auto mode_sum = [=](double rho) { return s * len / (4.0 * std::pow(rho, 1.5)); };
    const double target = cfg.coupling * cfg.coupling * len;
    return finish(cfg, solve_rho(mode_sum, target), mode_sum, target, len);
}

namespace {

SaddleSolution solve_2d(const ModelConfig& cfg, const std::vector<double>& w,
                        const std::vector<double>& k2) {
    auto mode_sum = [&](double rho) {
        return kernels::screened_mode_sum(w.data(), k2.data(), w.size(), rho);
    };
    const double len = cfg.length();
    const double target = cfg.coupling * cfg.coupling * len * len;
    SaddleSolution sol = finish(cfg, solve_rho(mode_sum, target), mode_sum, target, len);
    if (sol.r0 > len / 4.0) sol.finite_size_warning = true;
    return sol;
}

std::vector<double> square_lattice_k2(int m_side) {
    std::vector<double> k2(static_cast<std::size_t>(m_side) * m_side);
    const double dk = 2.0 * M_PI / m_side;
    for (int r = 0; r < m_side; ++r) {
        const int sr = r <= m_side / 2 ? r : r - m_side;
        for (int c = 0; c < m_side; ++c) {
            const int sc = c <= m_side / 2 ? c : c - m_side;
            k2[static_cast<std::size_t>(r) * m_side + c] =
                dk * dk * (static_cast<double>(sr) * sr + static_cast<double>(sc) * sc);
        }
    }
    return k2;
}

} // namespace

SaddleSolution solve_saddle_2d(const DisorderRealization& real, const ModelConfig& cfg) {
    require_solvable(cfg, 2);
    const int m_side = cfg.n_sites;
    std::vector<double> fluct(real.splittings.size());
    for (std::size_t i = 0; i < fluct.size(); ++i) fluct[i] = real.splittings[i] - 1.0;
    const auto f = dft_2d(fluct, m_side, m_side);

    // b_q = (L / M^2) F_q with L = M a, so |b_q|^2 = |F_q|^2 / M^2 (a = 1).
    const double scale = 1.0 / (static_cast<double>(m_side) * m_side);
    std::vector<double> w(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) w[i] = 4.0 * std::norm(f[i]) * scale;
    return solve_2d(cfg, w, square_lattice_k2(m_side));
}

SaddleSolution solve_saddle_2d_averaged(const ModelConfig& cfg) {
    require_solvable(cfg, 2);
    const double s = 4.0 * cfg.disorder_width * cfg.disorder_width;
    std::vector<double> k2 = square_lattice_k2(cfg.n_sites);
    std::vector<double> w(k2.size(), s);
    return solve_2d(cfg, w, k2);
}

FourierField apply_mode_filter(const FourierField& modes, double r0) {
    if (!(r0 >= 0.0)) throw ValidationError("mode filter: r0 must be >= 0");
    FourierField out = modes;
    const int n = modes.n_modes();
    if (std::isinf(r0)) {
        // synchronized limit: only the mean survives
        for (int m = 1; m < n; ++m) out.modes[m] = 0.0;
        return out;
    }
    for (int m = 0; m < n; ++m) {
        const int sn = m <= n / 2 ? m : m - n;
        const double k = modes.wavenumber(sn);
        out.modes[m] /= r0 * r0 * k * k + 1.0;
    }
    return out;
}

std::pair<FrequencyField, SaddleSolution>
saddle_filter(const DisorderRealization& real, const ModelConfig& cfg) {
    const SaddleSolution sol = solve_saddle(real, cfg);
    const FourierField b = fourier_forward(real.splittings, cfg.boundary, 1.0);
    FrequencyField field;
    field.frequencies = fourier_inverse(apply_mode_filter(b, sol.r0));
    field.method = FieldMethod::saddle_filter;
    field.realization_seed = real.seed;
    field.config_hash = real.config_hash;
    return {std::move(field), sol};
}

} // namespace sqm
