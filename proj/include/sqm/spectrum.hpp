#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqm/config.hpp"
#include "sqm/field.hpp"

namespace sqm {

/// D(omega) = 1 - sum_i alpha / ((omega - omega_i)^2 + gamma^2) on a uniform
/// grid. D <= 1 everywhere and D >= 1 - N alpha / gamma^2.
struct TransmissionSpectrum {
    std::vector<double> grid;
    std::vector<double> values;
    SpectrumParams params;
    std::uint64_t config_hash = 0;
};

struct Drop {
    double center = 0.0;
    double depth = 0.0;        // 1 - D at the minimum
    double half_width = 0.0;   // full width at half depth
    int member_count = 0;      // depth * gamma^2 / alpha, rounded
};

struct DropSet {
    std::vector<Drop> drops;   // centers ascending, pairwise separation > gamma
    double threshold = 0.0;
};

/// Evaluates the transmission on the params grid. The grid must cover
/// [min omega_i - 5 gamma, max omega_i + 5 gamma]; auto-derives a grid with
/// 8 gamma padding when grid_min == grid_max.
TransmissionSpectrum transmission(const FrequencyField& field, SpectrumParams params);

/// Local minima of D deeper than the threshold; minima closer than gamma are
/// merged keeping the deeper one.
DropSet detect_drops(const TransmissionSpectrum& spectrum, double depth_threshold);

struct DropCountLaw {
    double measured_mean = 0.0;
    double measured_se = 0.0;
    double predicted = 0.0;    // max(1, (N/2) (dDelta/Ktilde)^2)
    std::vector<std::string> regime_warnings;
};

/// Filter pipeline -> transmission -> drop counting over many realizations.
/// Detection threshold is half a single-line depth (0.5 alpha / gamma^2).
/// Out-of-regime parameters (kappa < 1, gamma not << dDelta) are reported in
/// regime_warnings, not silently ignored.
DropCountLaw drop_count_law(const ModelConfig& cfg, const SpectrumParams& params,
                            int realizations, std::uint64_t master_seed);

} // namespace sqm
