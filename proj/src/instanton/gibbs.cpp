#include "sqm/gibbs.hpp"

#include <cmath>

#include "sqm/errors.hpp"
#include "sqm/kernels.hpp"

namespace sqm {

GibbsEnergy GibbsEnergy::from_config(const ModelConfig& cfg) {
    GibbsEnergy e;
    e.coupling_weight = cfg.coupling / cfg.temperature;
    e.curvature_weight = 0.5 / cfg.temperature;
    return e;
}

double gibbs_energy(const std::vector<double>& frequencies,
                    const DisorderRealization& real, const GibbsEnergy& energy,
                    Boundary boundary) {
    if (frequencies.size() != real.splittings.size())
        throw ValidationError("gibbs_energy: field and realization lengths differ");
    const std::size_t n = frequencies.size();
    const double grad = kernels::abs_neighbor_diff_sum(frequencies.data(), n,
                                                       boundary == Boundary::periodic);
    const double pin = kernels::sq_dev_sum(frequencies.data(), real.splittings.data(), n);
    return energy.coupling_weight * grad + energy.curvature_weight * pin;
}

} // namespace sqm
