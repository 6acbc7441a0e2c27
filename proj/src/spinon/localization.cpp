#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/parallel.hpp"
#include "sqm/rng.hpp"
#include "sqm/spinon.hpp"

namespace sqm {

std::vector<LocalizationPoint> localization_scan(const ModelConfig& cfg,
                                                 const std::vector<double>& kappas,
                                                 int realizations,
                                                 std::uint64_t master_seed) {
    if (cfg.n_sites < 1000)
        throw ValidationError("localization_scan: chains must have N >= 1000");
    if (realizations < 20)
        throw ValidationError("localization_scan: needs >= 20 realizations per kappa");
    if (kappas.empty())
        throw ValidationError("localization_scan: empty kappa grid");
    if (!(cfg.disorder_width > 0.0))
        throw ValidationError("localization_scan: needs nonzero disorder");

    const int n = cfg.n_sites;
    std::vector<LocalizationPoint> table(kappas.size());
    for (std::size_t p = 0; p < kappas.size(); ++p) {
        const double kappa = kappas[p];
        const ModelConfig point_cfg =
            make_config(cfg.n_sites, cfg.raw_mean_splitting, cfg.raw_disorder_width,
                        kappa * cfg.raw_disorder_width, cfg.raw_temperature, 1,
                        Boundary::open);

        struct RealStat { double len_sum = 0, ipr_inv_sum = 0; int count = 0; };
        std::vector<RealStat> stats(realizations);
        parallel_for(realizations, [&](int r) {
            const std::uint64_t seed = derive_seed(master_seed, p, r);
            const DisorderRealization real = sample_disorder(point_cfg, seed);
            const SpinonSpectrum s =
                free_fermion_solve(SpinChainSpec::from_realization(real, point_cfg));
            const int lo = static_cast<int>(0.45 * n), hi = static_cast<int>(0.55 * n);
            for (int k = lo; k < hi; ++k) {
                if (std::isfinite(s.loc_lengths[k])) {
                    stats[r].len_sum += s.loc_lengths[k];
                    stats[r].ipr_inv_sum += 1.0 / s.iprs[k];
                    ++stats[r].count;
                }
            }
        });

        LocalizationPoint& pt = table[p];
        pt.kappa = kappa;
        double len = 0, ipr_inv = 0;
        for (const auto& st : stats) {
            len += st.len_sum;
            ipr_inv += st.ipr_inv_sum;
            pt.n_states += st.count;
        }
        if (pt.n_states > 0) {
            pt.mean_loc_length = len / pt.n_states;
            pt.mean_ipr_inv = ipr_inv / pt.n_states;
        } else {
            pt.mean_loc_length = std::numeric_limits<double>::infinity();
        }
        pt.finite_size_flag = !(pt.mean_loc_length <= n / 4.0);
        table[p] = pt;
    }
    return table;
}

double localization_scaling_slope(const std::vector<LocalizationPoint>& table) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& pt : table) {
        if (!(pt.mean_loc_length > 0.0) || !std::isfinite(pt.mean_loc_length)) continue;
        const double x = std::log(pt.kappa), y = std::log(pt.mean_loc_length);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 2) throw SolverError("localization_scaling_slope: not enough finite points");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace sqm
