#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sqm/disorder.hpp"
#include "sqm/field.hpp"

namespace sqm {

/// Boltzmann weights of the interacting-instanton measure over frequencies,
///   P{omega} ~ exp( -coupling_weight * sum |omega_i - omega_{i-1}|
///                   -curvature_weight * sum (omega_i - Delta_i)^2 ).
/// In internal units coupling_weight = Ktilde / T and curvature_weight = 1/(2T).
struct GibbsEnergy {
    double coupling_weight = 0.0;
    double curvature_weight = 0.0;

    static GibbsEnergy from_config(const ModelConfig& cfg);
};

/// Energy of a frequency configuration for the given disorder. With periodic
/// boundary the gradient sum wraps (on a 2-site ring the bond is counted
/// twice, once per direction).
double gibbs_energy(const std::vector<double>& frequencies,
                    const DisorderRealization& real, const GibbsEnergy& energy,
                    Boundary boundary);

struct ChainOptions {
    int burnin_sweeps = 2000;
    int sweeps = 20000;       // post-burn-in
    int thin = 10;            // keep every thin-th sweep
    double target_acceptance = 0.4;  // tuned during burn-in, then frozen
    /// Test hook: called for every proposal with (delta_E, uniform, accepted).
    std::function<void(double, double, bool)> proposal_log;
};

struct ChainResult {
    std::vector<FrequencyField> fields;  // thinned post-burn-in samples
    double acceptance_rate = 0.0;        // measured after freezing the step
    double step = 0.0;                   // frozen proposal width
    double tau_int = 1.0;                // integrated autocorrelation of the mean frequency
};

/// Single-site Metropolis random walk on the Gibbs measure, initialized at
/// omega_i = Delta_i. The proposal width is tuned toward target_acceptance
/// during burn-in and frozen afterwards; a frozen acceptance outside
/// [5%, 95%] raises TuningError and a non-finite energy raises SolverError.
ChainResult sample_mcmc(const DisorderRealization& real, const ModelConfig& cfg,
                        const ChainOptions& opts, std::uint64_t seed);

/// Windowed integrated autocorrelation time of a scalar series
/// (tau = 1 + 2 sum rho(t), window grows until it covers 5 tau).
double integrated_autocorrelation(const std::vector<double>& series);

} // namespace sqm
