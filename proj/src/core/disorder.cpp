#include "sqm/disorder.hpp"

#include "sqm/rng.hpp"

namespace sqm {

DisorderRealization sample_disorder(const ModelConfig& cfg, std::uint64_t seed) {
    DisorderRealization real;
    real.seed = seed;
    real.config_hash = cfg.hash();
    const int n = cfg.total_sites();
    real.splittings.resize(n);
    for (int i = 0; i < n; ++i) {
        CounterRng rng = CounterRng::stream(seed, static_cast<std::uint64_t>(i));
        double value;
        do {
            value = 1.0 + cfg.disorder_width * rng.next_gaussian();
        } while (value <= 0.5);
        real.splittings[i] = value;
    }
    return real;
}

} // namespace sqm
