#include "sqm/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "sqm/errors.hpp"
#include "sqm/kernels.hpp"

namespace sqm {

TransmissionSpectrum transmission(const FrequencyField& field, SpectrumParams params) {
    if (field.frequencies.empty())
        throw ValidationError("transmission: empty frequency field");
    for (double w : field.frequencies)
        if (!std::isfinite(w)) throw ValidationError("transmission: non-finite frequency");

    const auto [lo_it, hi_it] =
        std::minmax_element(field.frequencies.begin(), field.frequencies.end());
    const double lo = *lo_it, hi = *hi_it;

    if (params.grid_min == params.grid_max) {
        params.grid_min = lo - 8.0 * params.gamma;
        params.grid_max = hi + 8.0 * params.gamma;
    }
    params.validate();
    if (params.grid_min > lo - 5.0 * params.gamma || params.grid_max < hi + 5.0 * params.gamma)
        throw ValidationError("transmission: grid does not cover all lines +- 5 gamma");

    TransmissionSpectrum spec;
    spec.params = params;
    spec.config_hash = field.config_hash;
    const int n_grid =
        static_cast<int>(std::floor((params.grid_max - params.grid_min) / params.grid_step)) + 1;
    spec.grid.resize(n_grid);
    for (int g = 0; g < n_grid; ++g) spec.grid[g] = params.grid_min + g * params.grid_step;
    spec.values.resize(n_grid);
    kernels::lorentzian_sum(spec.grid.data(), n_grid, field.frequencies.data(),
                            field.frequencies.size(), params.alpha, params.gamma,
                            spec.values.data());
    for (double& v : spec.values) v = 1.0 - v;
    return spec;
}

DropSet detect_drops(const TransmissionSpectrum& spectrum, double depth_threshold) {
    const auto& d = spectrum.values;
    const auto& grid = spectrum.grid;
    const double gamma = spectrum.params.gamma;
    if (spectrum.params.grid_step > gamma / 5.0)
        throw ValidationError("detect_drops: grid_step must be <= gamma / 5");

    DropSet set;
    set.threshold = depth_threshold;
    std::vector<Drop> found;
    for (std::size_t i = 1; i + 1 < d.size(); ++i) {
        if (!(d[i] <= d[i - 1] && d[i] < d[i + 1])) continue;
        const double depth = 1.0 - d[i];
        if (depth < depth_threshold) continue;
        Drop drop;
        drop.center = grid[i];
        drop.depth = depth;
        // width at half depth from the nearest grid crossings
        const double half_level = 1.0 - 0.5 * depth;
        std::size_t l = i, r = i;
        while (l > 0 && d[l] < half_level) --l;
        while (r + 1 < d.size() && d[r] < half_level) ++r;
        drop.half_width = grid[r] - grid[l];
        drop.member_count = std::max(
            1, static_cast<int>(std::lround(depth * gamma * gamma / spectrum.params.alpha)));
        found.push_back(drop);
    }

    // Merge minima closer than gamma, keeping the deeper, until stable.
    std::sort(found.begin(), found.end(),
              [](const Drop& a, const Drop& b) { return a.center < b.center; });
    bool merged = true;
    while (merged) {
        merged = false;
        std::vector<Drop> next;
        for (const Drop& drop : found) {
            if (!next.empty() && drop.center - next.back().center < gamma) {
                if (drop.depth > next.back().depth) next.back() = drop;
                merged = true;
            } else {
                next.push_back(drop);
            }
        }
        found.swap(next);
    }
    set.drops = std::move(found);
    return set;
}

} // namespace sqm
