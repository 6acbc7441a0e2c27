#include "sqm/spinon.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqm/errors.hpp"

namespace sqm {

SpinChainSpec SpinChainSpec::from_realization(const DisorderRealization& real,
                                              const ModelConfig& cfg) {
    if (cfg.dimension != 1)
        throw ValidationError("spin-chain oracle is one-dimensional");
    if (!(cfg.coupling < 1.0))
        throw ValidationError("spin-chain oracle requires coupling < mean splitting");
    SpinChainSpec spec;
    spec.splittings = real.splittings;
    spec.coupling = cfg.coupling;
    spec.realization_seed = real.seed;
    spec.config_hash = real.config_hash;
    return spec;
}

namespace {

/// Exponential-envelope localization length: slope of log|psi| against the
/// distance from the peak, over the central half of the support with the 5
/// outermost chain sites excluded. Non-decaying envelopes give +inf.
double envelope_length(const double* psi, int n) {
    int peak = 0;
    double amax = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(psi[i]);
        if (a > amax) { amax = a; peak = i; }
    }
    if (amax <= 0.0) return std::numeric_limits<double>::infinity();
    const double floor = amax * 1e-10;
    int lo = peak, hi = peak;
    while (lo > 0 && std::abs(psi[lo - 1]) > floor) --lo;
    while (hi + 1 < n && std::abs(psi[hi + 1]) > floor) ++hi;
    const int mid = (lo + hi) / 2, quarter = (hi - lo) / 4;
    lo = std::max(mid - quarter, 5);
    hi = std::min(mid + quarter, n - 6);
    if (hi - lo < 8) return std::numeric_limits<double>::infinity();

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (int i = lo; i <= hi; ++i) {
        const double x = std::abs(i - peak);
        const double y = std::log(std::abs(psi[i]) + 1e-300);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    const double det = m * sxx - sx * sx;
    if (det <= 0.0) return std::numeric_limits<double>::infinity();
    const double slope = (m * sxy - sx * sy) / det;
    if (slope >= 0.0) return std::numeric_limits<double>::infinity();
    return -1.0 / slope;
}

} // namespace

SpinonSpectrum free_fermion_solve(const SpinChainSpec& spec) {
    const int n = static_cast<int>(spec.splittings.size());
    if (n < 1) throw ValidationError("free_fermion_solve: empty chain");
    if (n > 4096) throw ValidationError("free_fermion_solve: N must be <= 4096");

    // Tridiagonal U^T U for bidiagonal U (diag -Delta_i, super Ktilde/2).
    const double j = 0.5 * spec.coupling;
    std::vector<double> diag(n), off(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i)
        diag[i] = spec.splittings[i] * spec.splittings[i] + (i > 0 ? j * j : 0.0);
    for (int i = 0; i + 1 < n; ++i) off[i] = -spec.splittings[i] * j;

    SpinonSpectrum s;
    s.n_sites = n;
    s.wavefunctions.assign(static_cast<std::size_t>(n) * n, 0.0);
    const lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, diag.data(), off.data(),
                                           s.wavefunctions.data(), n);
    if (info != 0)
        throw SolverError("free_fermion_solve: dstevd failed with info = " +
                          std::to_string(info));

    s.energies.resize(n);
    for (int k = 0; k < n; ++k) s.energies[k] = 0.5 * std::sqrt(std::max(diag[k], 0.0));
    s.iprs.resize(n);
    s.loc_lengths.resize(n);
    for (int k = 0; k < n; ++k) {
        const double* psi = s.state(k);
        double ipr = 0.0;
        for (int i = 0; i < n; ++i) ipr += psi[i] * psi[i] * psi[i] * psi[i];
        s.iprs[k] = ipr;
        s.loc_lengths[k] = envelope_length(psi, n);
    }
    return s;
}

std::vector<ManyBodyLevel> reconstruct_many_body(const SpinonSpectrum& spectrum) {
    const int n = spectrum.n_sites;
    if (n > 20) throw ValidationError("reconstruct_many_body: 2^N blow-up, N must be <= 20");
    const std::size_t total = 1ull << n;
    std::vector<ManyBodyLevel> levels(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
        double e = 0.0;
        for (int k = 0; k < n; ++k)
            e += (mask >> k) & 1 ? spectrum.energies[k] : -spectrum.energies[k];
        const int parity = __builtin_parityll(mask ^ (total - 1)) ? -1 : 1;
        levels[mask] = {e, parity};
    }
    std::sort(levels.begin(), levels.end(), [](const ManyBodyLevel& a, const ManyBodyLevel& b) {
        return a.parity != b.parity ? a.parity > b.parity : a.energy < b.energy;
    });
    return levels;
}

PartitionCheck partition_check(const SpinChainSpec& spec, double temperature) {
    if (spec.coupling != 0.0)
        throw ValidationError("partition_check is a K = 0 identity");
    if (!(temperature > 0.0))
        throw ValidationError("partition_check: temperature must be positive");
    PartitionCheck out;
    const int n = static_cast<int>(spec.splittings.size());
    if (n <= 12) {
        const DenseSpectrum dense = dense_solve(spec);
        for (double e : dense.energies) out.z_spectral += std::exp(-e / temperature);
    } else {
        const SpinonSpectrum s = free_fermion_solve(spec);
        out.z_spectral = 1.0;
        for (double e : s.energies) out.z_spectral *= 2.0 * std::cosh(e / temperature);
    }
    out.z_product = 1.0;
    for (double d : spec.splittings) out.z_product *= 2.0 * std::cosh(d / (2.0 * temperature));
    out.ratio = out.z_spectral / out.z_product;
    return out;
}

} // namespace sqm
