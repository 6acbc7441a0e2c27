#pragma once

#include <cstddef>
#include <string>

namespace sqm::kernels {

/// Inner arithmetic loops used by the hot paths (spectrum synthesis,
/// correlation estimation, saddle mode sums, Gibbs energy). Each kernel has
/// a scalar reference implementation and an AVX2+FMA variant; the variant is
/// picked once at startup from CPUID, overridable with SQM_KERNELS=scalar|avx2.
/// The variants are equivalence-tested against each other; they may differ
/// by rounding (FMA, reassociation) within ~1e-13 relative.

/// out[g] = sum_i alpha / ((grid[g] - centers[i])^2 + gamma^2)
void lorentzian_sum(const double* grid, std::size_t n_grid,
                    const double* centers, std::size_t n_centers,
                    double alpha, double gamma, double* out);

/// dot(a, b) over n entries.
double dot(const double* a, const double* b, std::size_t n);

/// out[m] = (1/n) * sum_j x[j] * x[(j+m) mod n],  m = 0..max_lag.
void periodic_autocorr(const double* x, std::size_t n, std::size_t max_lag, double* out);

/// sum_i w[i] * k2[i] / (rho * k2[i] + 1)^2  -- the screened mode sum of the
/// saddle-point equations.
double screened_mode_sum(const double* w, const double* k2, std::size_t n, double rho);

/// sum over bonds of |x[i] - x[i-1]|; adds the wrap-around bond when periodic.
double abs_neighbor_diff_sum(const double* x, std::size_t n, bool periodic);

/// sum_i (x[i] - c[i])^2
double sq_dev_sum(const double* x, const double* c, std::size_t n);

/// Name of the active backend ("scalar" or "avx2").
const std::string& backend();

/// Force a backend (tests use this); throws ValidationError for names other
/// than "scalar", "avx2", "auto", or if avx2 is requested but unsupported.
void set_backend(const std::string& name);

} // namespace sqm::kernels
