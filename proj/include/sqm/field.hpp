#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqm/config.hpp"
#include "sqm/disorder.hpp"

namespace sqm {

enum class FieldMethod { noninteracting, mcmc, saddle_filter };

/// Per-qubit oscillation frequencies (units of mean splitting / hbar) for
/// one disorder realization, tagged with the route that produced them.
struct FrequencyField {
    std::vector<double> frequencies;
    FieldMethod method = FieldMethod::noninteracting;
    std::uint64_t realization_seed = 0;
    std::uint64_t config_hash = 0;
};

std::string to_string(FieldMethod m);

/// Independent thermal frequencies at zero coupling: omega_i is Gaussian
/// with mean Delta_i and variance T * Delta_i (instanton-count fluctuations
/// mapped to frequency). The config coupling is ignored here by definition.
FrequencyField sample_noninteracting(const DisorderRealization& real,
                                     const ModelConfig& cfg, std::uint64_t seed);

} // namespace sqm
