#include "sqm/spectrum.hpp"

#include <cmath>

#include "sqm/errors.hpp"
#include "sqm/rng.hpp"
#include "sqm/saddle.hpp"

namespace sqm {

DropCountLaw drop_count_law(const ModelConfig& cfg, const SpectrumParams& params,
                            int realizations, std::uint64_t master_seed) {
    if (realizations < 1) throw ValidationError("drop_count_law: realizations must be >= 1");
    DropCountLaw law;
    const double kappa = cfg.kappa();
    if (!(kappa >= 1.0))
        law.regime_warnings.push_back("kappa < 1: outside the synchronized regime");
    if (!(cfg.disorder_width >= 10.0 * params.gamma))
        law.regime_warnings.push_back("dDelta is not >> gamma: clusters may not resolve");

    const double threshold = 0.5 * params.alpha / (params.gamma * params.gamma);
    double sum = 0.0, sumsq = 0.0;
    for (int r = 0; r < realizations; ++r) {
        const std::uint64_t seed = derive_seed(master_seed, 0, r);
        const DisorderRealization real = sample_disorder(cfg, seed);
        const auto [field, sol] = saddle_filter(real, cfg);
        const DropSet drops = detect_drops(transmission(field, params), threshold);
        const double c = static_cast<double>(drops.drops.size());
        sum += c;
        sumsq += c * c;
    }
    law.measured_mean = sum / realizations;
    if (realizations > 1) {
        const double var =
            std::max(0.0, (sumsq - realizations * law.measured_mean * law.measured_mean) /
                              (realizations - 1));
        law.measured_se = std::sqrt(var / realizations);
    }
    const double ratio = cfg.disorder_width / cfg.coupling;
    law.predicted = std::max(1.0, 0.5 * cfg.n_sites * ratio * ratio);
    return law;
}

} // namespace sqm
