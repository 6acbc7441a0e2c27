#pragma once

#include <cstdint>
#include <vector>

#include "sqm/config.hpp"
#include "sqm/disorder.hpp"

namespace sqm {

/// Open transverse-field spin-1/2 chain mapped from a disorder realization:
///   H = sum_i Delta_i s_x(i) + Ktilde sum_i s_z(i) s_z(i+1),  s = sigma / 2.
struct SpinChainSpec {
    std::vector<double> splittings;  // transverse fields, internal units
    double coupling = 0.0;           // Ktilde
    std::uint64_t realization_seed = 0;
    std::uint64_t config_hash = 0;

    static SpinChainSpec from_realization(const DisorderRealization& real,
                                          const ModelConfig& cfg);
};

/// Single-particle (spinon) data from the quadratic-fermion reduction.
/// energies are the half-excitation values: every many-body level is exactly
/// sum_k (+-) energies[k], so the K = 0 chain gives energies Delta_i / 2 and
/// a many-body gap of min Delta_i. Wavefunctions are orthonormal real
/// vectors, one per column-contiguous entry of `wavefunctions`.
struct SpinonSpectrum {
    int n_sites = 0;
    std::vector<double> energies;        // ascending, size N
    std::vector<double> wavefunctions;   // N x N, state k at [k*N ... k*N+N)
    std::vector<double> iprs;            // sum psi^4 per state
    std::vector<double> loc_lengths;     // exponential-envelope fit, +inf if extended

    const double* state(int k) const { return wavefunctions.data() + k * n_sites; }
};

/// Jordan-Wigner reduction of the open chain to quadratic fermions: with
/// fields Delta_i / 2 and bonds Ktilde / 4, the positive-branch spectrum is
/// sqrt(eig(U^T U)) / 2 for the bidiagonal U (diag -Delta_i, super Ktilde/2),
/// obtained from the symmetric tridiagonal U^T U. N up to 4096.
SpinonSpectrum free_fermion_solve(const SpinChainSpec& spec);

/// All 2^N many-body energies reconstructed from the fermionic solution,
/// with the spin-flip parity of each level (product of the +- choices; the
/// quasiparticle vacuum is even in this regime since no mode crosses zero).
/// Sorted by (parity, energy): even sector first.
struct ManyBodyLevel {
    double energy;
    int parity;  // +1 or -1 under the global x-parity
};
std::vector<ManyBodyLevel> reconstruct_many_body(const SpinonSpectrum& spectrum);

/// Full 2^N x 2^N diagonalization in the sigma_x product basis (parity is
/// diagonal there). Memory guard: N <= 12.
struct DenseSpectrum {
    std::vector<double> energies;        // ascending
    std::vector<int> parities;           // per level
    std::vector<double> ground_vector;   // 2^N amplitudes
};
DenseSpectrum dense_solve(const SpinChainSpec& spec);

/// K = 0 thermodynamic identity: spectral sum against the closed product
/// form prod_i 2 cosh(Delta_i / (2T)). Uses the dense spectrum for N <= 12
/// and the exact fermionic product prod_k 2 cosh(e_k / T) above that.
struct PartitionCheck {
    double z_spectral = 0.0;
    double z_product = 0.0;
    double ratio = 0.0;
};
PartitionCheck partition_check(const SpinChainSpec& spec, double temperature);

/// Band-center localization statistics across a kappa grid. For each kappa,
/// couples the base disorder at Ktilde = kappa * dDelta, solves >= 20
/// realizations of open chains, and averages localization lengths of the
/// central 10% (by rank) of the spinon band.
struct LocalizationPoint {
    double kappa = 0.0;
    double mean_loc_length = 0.0;
    double mean_ipr_inv = 0.0;
    int n_states = 0;
    bool finite_size_flag = false;  // mean length beyond N/4
};
std::vector<LocalizationPoint> localization_scan(const ModelConfig& cfg,
                                                 const std::vector<double>& kappas,
                                                 int realizations,
                                                 std::uint64_t master_seed);

/// Least-squares slope of log(loc length) vs log(kappa) over scan points.
double localization_scaling_slope(const std::vector<LocalizationPoint>& table);

} // namespace sqm
