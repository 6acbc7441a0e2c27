#pragma once

#include <span>
#include <vector>

#include "sqm/config.hpp"
#include "sqm/field.hpp"

namespace sqm {

/// Disorder-averaged connected frequency correlator,
///   R(x) = <omega(x0) omega(x0+x)> - 1        (mean frequency is 1 internally),
/// binned at integer separations with standard errors from the
/// realization-to-realization spread. The estimator subtracts the known
/// ensemble mean, not the sample mean, and averages over x0 around the ring,
/// so R(x) = R(-x) holds by construction.
struct CorrelationEstimate {
    std::vector<double> separations;   // 0, 1, ..., max_lag (units of a)
    std::vector<double> r_values;
    std::vector<double> std_errors;
    int n_realizations = 0;
    std::uint64_t config_hash = 0;
};

/// Requires >= 20 fields, all from the same config (hash-checked).
/// max_lag <= L/2; 0 picks min(L/2, 8 * 2 kappa^2), the scale beyond which
/// the expected signal is below noise.
CorrelationEstimate estimate_correlation(std::span<const FrequencyField> fields,
                                         const ModelConfig& cfg, int max_lag = 0);

struct R0Fit {
    double r0 = 0.0;
    double amplitude = 0.0;
    double residual = 0.0;       // weighted relative L2 misfit over the fit range
    bool boundary_pinned = false;  // r0 ended on the scan boundary
};

/// Weighted least squares of A (1 + x/r0) exp(-x/r0) against the estimate:
/// r0 by golden-section scan on [a/10, L/2] with A solved analytically per
/// candidate. Needs >= 10 bins with finite errors.
R0Fit fit_r0(const CorrelationEstimate& est, double scan_max);

} // namespace sqm
