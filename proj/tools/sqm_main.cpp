#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sqm/correlation.hpp"
#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/kernels.hpp"
#include "sqm/parallel.hpp"
#include "sqm/plots.hpp"
#include "sqm/rng.hpp"
#include "sqm/saddle.hpp"
#include "sqm/spectrum.hpp"
#include "sqm/spinon.hpp"
#include "sqm/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::string token;
    std::stringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stod(token));
    }
    if (out.empty()) throw sqm::ValidationError("empty value list '" + csv + "'");
    return out;
}

struct Args {
    std::string config_file;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int realizations = 1;
    int threads = 0;
    std::string method = "saddle";
    std::string pipeline = "saddle";
    std::string kappa_list;
    std::string run_dir;
    std::string in_file;
    std::string select;
    double depth_threshold = 0.0;
    double giant_threshold = 0.0;
    bool plots = false;
};

int run_sample_disorder(const Args& a) {
    const sqm::ModelConfig cfg = sqm::load_config(a.config_file);
    fs::create_directories(a.out_dir);
    for (int r = 0; r < a.realizations; ++r) {
        const std::uint64_t seed = sqm::derive_seed(a.seed, 0, r);
        const sqm::DisorderRealization real = sqm::sample_disorder(cfg, seed);
        char name[64];
        std::snprintf(name, sizeof(name), "disorder_r%04d.csv", r);
        sqm::write_realization(fs::path(a.out_dir) / name, real, cfg);
    }
    std::cout << "wrote " << a.realizations << " disorder realization(s) to " << a.out_dir
              << "\n";
    return 0;
}

int run_simulate(const Args& a) {
    sqm::SweepPlan plan;
    plan.base = sqm::load_config(a.config_file);
    plan.spectrum = sqm::load_spectrum_params(a.config_file, plan.base);
    plan.pipeline = sqm::pipeline_from_string(a.method);
    plan.realizations = a.realizations;
    plan.master_seed = a.seed;
    plan.out_dir = a.out_dir;
    const sqm::RunManifest m = sqm::run_sweep(plan);
    std::cout << "pipeline " << a.method << ": " << m.files.size() << " files, "
              << m.failures.size() << " failed realization(s)\n";
    return m.failure_fraction() > 0.1 ? 3 : 0;
}

int run_spectrum(const Args& a) {
    const sqm::ModelConfig cfg = sqm::load_config(a.config_file);
    const sqm::SpectrumParams params = sqm::load_spectrum_params(a.config_file, cfg);
    fs::create_directories(a.out_dir);

    const sqm::DropCountLaw law = sqm::drop_count_law(cfg, params, a.realizations, a.seed);
    const auto real = sqm::sample_disorder(cfg, sqm::derive_seed(a.seed, 0, 0));
    const auto [field, sol] = sqm::saddle_filter(real, cfg);
    const auto spec = sqm::transmission(field, params);
    const double thr = a.depth_threshold > 0.0
                           ? a.depth_threshold
                           : 0.5 * params.alpha / (params.gamma * params.gamma);
    const sqm::DropSet drops = sqm::detect_drops(spec, thr);
    sqm::write_spectrum(fs::path(a.out_dir) / "spectrum.csv", spec);
    sqm::write_drops(fs::path(a.out_dir) / "drops.json", drops);

    // giant = deep enough to hold several synchronized lines (default 3 alpha/gamma^2)
    const double giant_thr = a.giant_threshold > 0.0
                                 ? a.giant_threshold
                                 : 3.0 * params.alpha / (params.gamma * params.gamma);
    int giant = 0;
    for (const auto& d : drops.drops)
        if (d.depth >= giant_thr) ++giant;

    json j{{"measured_mean_drop_count", law.measured_mean},
           {"measured_se", law.measured_se},
           {"predicted_drop_count", law.predicted},
           {"giant_threshold", giant_thr},
           {"giant_drop_count", giant},
           {"regime_warnings", law.regime_warnings}};
    std::ofstream out(fs::path(a.out_dir) / "drop_count.json", std::ios::binary);
    out << j.dump(2) << "\n";
    std::cout << "mean drops " << law.measured_mean << " (predicted " << law.predicted
              << "); wrote spectrum.csv, drops.json, drop_count.json\n";
    for (const auto& w : law.regime_warnings) std::cout << "warning: " << w << "\n";
    return 0;
}

int run_oracle(const Args& a) {
    const sqm::ModelConfig cfg = sqm::load_config(a.config_file);
    fs::create_directories(a.out_dir);
    if (!a.kappa_list.empty()) {
        const auto kappas = parse_list(a.kappa_list);
        const auto table = sqm::localization_scan(cfg, kappas, a.realizations, a.seed);
        sqm::CsvTable t;
        t.columns = {"kappa", "mean_loc_length", "mean_ipr_inv", "n_states",
                     "finite_size_flag"};
        for (const auto& pt : table)
            t.rows.push_back({pt.kappa, pt.mean_loc_length, pt.mean_ipr_inv,
                              static_cast<double>(pt.n_states),
                              pt.finite_size_flag ? 1.0 : 0.0});
        sqm::write_csv(fs::path(a.out_dir) / "localization.csv", t);
        {
            std::ofstream side(fs::path(a.out_dir) / "localization.csv.json",
                               std::ios::binary);
            side << json{{"schema_version", 1},
                         {"kind", "localization_table"},
                         {"config_hash", cfg.hash()},
                         {"boundary", "open"},
                         {"spin_convention", "s = sigma/2"},
                         {"band_selection", "central 10% by rank"},
                         {"estimator",
                          "log-envelope fit, central half of support, 5 edge "
                          "sites excluded; 1/IPR secondary"},
                         {"master_seed", a.seed},
                         {"realizations", a.realizations}}
                        .dump(2)
                 << "\n";
        }
        const double slope = sqm::localization_scaling_slope(table);
        std::cout << "localization scan: log-log slope " << slope
                  << "; wrote localization.csv\n";
        return 0;
    }

    const auto real = sqm::sample_disorder(cfg, sqm::derive_seed(a.seed, 0, 0));
    const sqm::ModelConfig open_cfg =
        sqm::make_config(cfg.n_sites, cfg.raw_mean_splitting, cfg.raw_disorder_width,
                         cfg.raw_coupling, cfg.raw_temperature, 1, sqm::Boundary::open);
    const auto spec = sqm::SpinChainSpec::from_realization(real, open_cfg);
    const auto s = sqm::free_fermion_solve(spec);
    sqm::CsvTable t;
    t.columns = {"index", "energy", "ipr", "loc_length"};
    for (int k = 0; k < s.n_sites; ++k)
        t.rows.push_back({static_cast<double>(k), s.energies[k], s.iprs[k],
                          std::isfinite(s.loc_lengths[k]) ? s.loc_lengths[k] : -1.0});
    sqm::write_csv(fs::path(a.out_dir) / "spinon.csv", t);
    {
        std::ofstream side(fs::path(a.out_dir) / "spinon.csv.json", std::ios::binary);
        side << json{{"schema_version", 1},
                     {"kind", "spinon_spectrum"},
                     {"config_hash", cfg.hash()},
                     {"boundary", "open"},
                     {"bulk_model_boundary", to_string(cfg.boundary)},
                     {"spin_convention", "s = sigma/2"},
                     {"seed", a.seed}}
                    .dump(2)
             << "\n";
    }

    json j{{"kind", "oracle_summary"}, {"n_sites", s.n_sites}};
    if (cfg.coupling == 0.0) {
        const auto z = sqm::partition_check(spec, cfg.temperature);
        j["partition_check"] = json{{"z_spectral", z.z_spectral},
                                    {"z_product", z.z_product},
                                    {"ratio", z.ratio}};
    }
    std::ofstream out(fs::path(a.out_dir) / "oracle.json", std::ios::binary);
    out << j.dump(2) << "\n";
    std::cout << "wrote spinon.csv and oracle.json\n";
    return 0;
}

int run_sweep_cmd(const Args& a) {
    sqm::SweepPlan plan;
    plan.base = sqm::load_config(a.config_file);
    plan.spectrum = sqm::load_spectrum_params(a.config_file, plan.base);
    plan.pipeline = sqm::pipeline_from_string(a.pipeline);
    plan.realizations = a.realizations;
    plan.master_seed = a.seed;
    plan.out_dir = a.out_dir;
    if (!a.kappa_list.empty()) {
        plan.swept = "kappa";
        plan.values = parse_list(a.kappa_list);
    }
    const sqm::RunManifest m = sqm::run_sweep(plan);
    std::cout << "sweep over " << plan.swept << " (" << plan.values.size() << " points x "
              << plan.realizations << " realizations): " << m.files.size() << " files, "
              << m.failures.size() << " failures\n";
    if (a.plots) {
        const sqm::PlotReport rep = sqm::emit_plots(plan.out_dir, {});
        for (const auto& f : rep.written) std::cout << "plot: " << f << "\n";
        for (const auto& s : rep.skipped) std::cout << "skip: " << s << "\n";
    }
    return m.failure_fraction() > 0.1 ? 3 : 0;
}

int run_fit_r0(const Args& a) {
    const sqm::CorrelationEstimate est = sqm::read_correlation(a.in_file);
    const double scan_max =
        est.separations.empty() ? 1.0 : 2.0 * est.separations.back() + 1.0;
    const sqm::R0Fit fit = sqm::fit_r0(est, scan_max);
    json j{{"r0", fit.r0},
           {"amplitude", fit.amplitude},
           {"residual", fit.residual},
           {"boundary_pinned", fit.boundary_pinned}};
    fs::create_directories(a.out_dir);
    std::ofstream out(fs::path(a.out_dir) / "fit_r0.json", std::ios::binary);
    out << j.dump(2) << "\n";
    std::cout << "r0 = " << fit.r0 << ", amplitude = " << fit.amplitude
              << ", residual = " << fit.residual << "\n";
    return 0;
}

int run_plot(const Args& a) {
    const std::string dir = a.run_dir.empty() ? a.out_dir : a.run_dir;
    std::vector<std::string> selection;
    if (!a.select.empty()) {
        std::stringstream ss(a.select);
        std::string tok;
        while (std::getline(ss, tok, ',')) selection.push_back(tok);
    }
    const sqm::PlotReport rep = sqm::emit_plots(dir, selection);
    for (const auto& f : rep.written) std::cout << "plot: " << f << "\n";
    for (const auto& s : rep.skipped) std::cout << "skip: " << s << "\n";
    if (rep.written.empty()) {
        std::cerr << "no plots could be produced\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sqm: disordered qubit-array synchronization simulator"};
    app.require_subcommand(1);
    Args a;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* c = cmd->add_option("--config", a.config_file, "model config file");
        if (needs_config) c->required();
        cmd->add_option("--seed", a.seed, "master seed");
        cmd->add_option("--out", a.out_dir, "output directory");
        cmd->add_option("--realizations", a.realizations, "realizations per point");
        cmd->add_option("--threads", a.threads, "worker threads (0 = hardware)");
    };

    auto* sample = app.add_subcommand("sample-disorder", "draw splitting realizations");
    add_common(sample, true);

    auto* simulate = app.add_subcommand("simulate", "produce frequency fields");
    add_common(simulate, true);
    simulate->add_option("--method", a.method, "noninteracting|mcmc|saddle")
        ->check(CLI::IsMember({"noninteracting", "mcmc", "saddle"}));

    auto* spectrum = app.add_subcommand("spectrum", "transmission spectra and drop counts");
    add_common(spectrum, true);
    spectrum->add_option("--depth-threshold", a.depth_threshold,
                         "drop detection threshold (default 0.5 alpha/gamma^2)");
    spectrum->add_option("--giant-threshold", a.giant_threshold,
                         "giant-drop classification depth (default 3 alpha/gamma^2)");

    auto* oracle = app.add_subcommand("oracle", "spin-chain diagnostics");
    add_common(oracle, true);
    oracle->add_option("--kappa-list", a.kappa_list, "localization scan grid (csv)");

    auto* sweep = app.add_subcommand("sweep", "seeded parameter sweep");
    add_common(sweep, true);
    sweep->add_option("--kappa-list", a.kappa_list, "kappa values (csv)");
    sweep->add_option("--pipeline", a.pipeline,
                      "noninteracting|mcmc|saddle|spectrum|oracle|all");
    sweep->add_flag("--plots", a.plots, "emit SVG plots after the sweep");

    auto* fit = app.add_subcommand("fit-r0", "fit the correlation decay model");
    fit->add_option("--in", a.in_file, "correlation csv")->required();
    fit->add_option("--out", a.out_dir, "output directory");

    auto* plot = app.add_subcommand("plot", "render SVG figures from a run directory");
    plot->add_option("--run", a.run_dir, "run directory (with manifest.json)");
    plot->add_option("--out", a.out_dir, "alias for --run");
    plot->add_option("--select", a.select, "comma list: spectrum,correlation,scaling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        sqm::set_thread_count(a.threads);
        if (sample->parsed()) return run_sample_disorder(a);
        if (simulate->parsed()) return run_simulate(a);
        if (spectrum->parsed()) return run_spectrum(a);
        if (oracle->parsed()) return run_oracle(a);
        if (sweep->parsed()) return run_sweep_cmd(a);
        if (fit->parsed()) return run_fit_r0(a);
        if (plot->parsed()) return run_plot(a);
    } catch (const sqm::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const sqm::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const sqm::TuningError& e) {
        std::cerr << "tuning error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
