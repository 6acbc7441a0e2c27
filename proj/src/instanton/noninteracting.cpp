#include "sqm/field.hpp"

#include <cmath>

#include "sqm/rng.hpp"

namespace sqm {

std::string to_string(FieldMethod m) {
    switch (m) {
        case FieldMethod::noninteracting: return "noninteracting";
        case FieldMethod::mcmc: return "mcmc";
        case FieldMethod::saddle_filter: return "saddle_filter";
    }
    return "?";
}

FrequencyField sample_noninteracting(const DisorderRealization& real,
                                     const ModelConfig& cfg, std::uint64_t seed) {
    FrequencyField field;
    field.method = FieldMethod::noninteracting;
    field.realization_seed = real.seed;
    field.config_hash = real.config_hash;
    field.frequencies.resize(real.splittings.size());
    for (std::size_t i = 0; i < real.splittings.size(); ++i) {
        CounterRng rng = CounterRng::stream(seed, i);
        const double di = real.splittings[i];
        field.frequencies[i] = di + std::sqrt(cfg.temperature * di) * rng.next_gaussian();
    }
    return field;
}

} // namespace sqm
