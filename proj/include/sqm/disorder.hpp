#pragma once

#include <cstdint>
#include <vector>

#include "sqm/config.hpp"

namespace sqm {

/// One draw of the per-qubit splittings, with the seed and config digest
/// that regenerate it bit-exactly. Splittings are in internal units
/// (mean value 1); for dimension 2 the array is row-major n_sites x n_sites.
struct DisorderRealization {
    std::vector<double> splittings;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

/// Splittings are i.i.d. Gaussian(1, disorder_width^2) truncated to > 1/2 by
/// per-site resampling; the truncation has negligible probability in the
/// narrow-disorder regime but guards positivity. Deterministic under
/// (seed, config): site i draws from its own counter stream.
DisorderRealization sample_disorder(const ModelConfig& cfg, std::uint64_t seed);

} // namespace sqm
