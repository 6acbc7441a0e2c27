#pragma once

#include <cstdint>
#include <utility>

#include "sqm/disorder.hpp"
#include "sqm/field.hpp"
#include "sqm/fourier.hpp"

namespace sqm {

/// Stationary point of the interacting-instanton mode integral. x0 is the
/// gradient aggregate, y0 the (real) auxiliary multiplier, and
/// r0 = sqrt(2 T y0) the correlation radius in lattice units. The two
/// stationarity residuals are relative and should sit at the bisection
/// tolerance (<= 1e-10).
struct SaddleSolution {
    double x0 = 0.0;
    double y0 = 0.0;
    double r0 = 0.0;
    double residual_multiplier = 0.0;  // first stationarity equation
    double residual_mode_sum = 0.0;    // second stationarity equation
    bool finite_size_warning = false;  // r0 > L/4 (attached by the 2D solver)
    /// True when the mode sum cannot balance the interaction aggregate at any
    /// finite radius (coupling beyond the full-synchronization crossover,
    /// kappa ~ sqrt(N)): r0 and y0 are +inf and the filter keeps only the
    /// mean mode.
    bool synchronized_limit = false;
};

/// Solves the stationarity pair for one disorder realization, using the
/// realization's mode weights. The pair is reduced by substitution to a
/// single equation in rho = r0^2,
///     rho^2 * X(rho) = Ktilde^2 * L^d,
///     X(rho) = sum_q w_q q^2 / (rho q^2 + 1)^2,
/// which is temperature-free; bisection runs to 1e-12 relative in rho.
///
/// The weights are w_q = 2 |b_q|^2 with b_q the lattice mode amplitudes of
/// the splitting field: uncorrelated lattice disorder gives <|b_q|^2> =
/// (dDelta)^2 a, while the saddle equations are calibrated such that their
/// disorder average is 2 (dDelta)^2 a (the closed form r0 = 2 a kappa^2
/// holds under that normalization, see solve_saddle_averaged).
SaddleSolution solve_saddle(const DisorderRealization& real, const ModelConfig& cfg);

/// Same equations with the mode sum replaced by its disorder average in the
/// infinite-lattice limit (X(rho) evaluated as the continuum integral with
/// weight 2 (dDelta)^2 a). The root then has the closed form
/// r0 = 2 a (Ktilde / dDelta)^2 and y0 = 2 Ktilde^4 / (T dDelta^4).
SaddleSolution solve_saddle_averaged(const ModelConfig& cfg);

/// Square-lattice version: 2D mode sums over q = (2 pi / L)(n, m) with the
/// same Lorentzian-squared denominator, aggregate sqrt(L^2 X), and the same
/// y0 -> r0 map. Weights transcribe the 1D normalization per dimension,
/// w_q = 4 |b_q|^2 (disorder average 4 (dDelta)^2 a^2). Attaches a
/// finite-size warning when r0 > L/4.
SaddleSolution solve_saddle_2d(const DisorderRealization& real, const ModelConfig& cfg);

/// 2D solver with disorder-averaged weights on the discrete mode lattice.
SaddleSolution solve_saddle_2d_averaged(const ModelConfig& cfg);

/// The mode-space low-pass filter a_q = b_q / (r0^2 q^2 + 1): zero mode
/// passes unchanged, every other mode is contracted.
FourierField apply_mode_filter(const FourierField& modes, double r0);

/// saddle_filter pipeline: mode-decompose the splittings, filter with the
/// realization's solved r0, transform back and tag the result. Returns the
/// field and the solution it used.
std::pair<FrequencyField, SaddleSolution>
saddle_filter(const DisorderRealization& real, const ModelConfig& cfg);

} // namespace sqm
