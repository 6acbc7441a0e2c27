#include "sqm/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>

#include <nlohmann/json.hpp>

#include "sqm/correlation.hpp"
#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/kernels.hpp"
#include "sqm/parallel.hpp"
#include "sqm/rng.hpp"
#include "sqm/saddle.hpp"
#include "sqm/spectrum.hpp"
#include "sqm/spinon.hpp"

namespace sqm {

using nlohmann::json;

Pipeline pipeline_from_string(const std::string& name) {
    if (name == "noninteracting") return Pipeline::noninteracting;
    if (name == "mcmc") return Pipeline::mcmc;
    if (name == "saddle") return Pipeline::saddle;
    if (name == "spectrum") return Pipeline::spectrum;
    if (name == "oracle") return Pipeline::oracle;
    if (name == "all") return Pipeline::all;
    throw ValidationError("unknown pipeline '" + name + "'");
}

std::string to_string(Pipeline p) {
    switch (p) {
        case Pipeline::noninteracting: return "noninteracting";
        case Pipeline::mcmc: return "mcmc";
        case Pipeline::saddle: return "saddle";
        case Pipeline::spectrum: return "spectrum";
        case Pipeline::oracle: return "oracle";
        case Pipeline::all: return "all";
    }
    return "?";
}

double RunManifest::failure_fraction() const {
    const long total = static_cast<long>(values.size()) * realizations;
    return total > 0 ? static_cast<double>(failures.size()) / total : 0.0;
}

ModelConfig point_config(const SweepPlan& plan, double value) {
    const ModelConfig& b = plan.base;
    if (plan.swept == "none")
        return b;
    if (plan.swept == "kappa") {
        if (!(b.raw_disorder_width > 0.0))
            throw ValidationError("kappa sweep needs nonzero disorder_width");
        return make_config(b.n_sites, b.raw_mean_splitting, b.raw_disorder_width,
                           value * b.raw_disorder_width, b.raw_temperature, b.dimension,
                           b.boundary);
    }
    if (plan.swept == "temperature")
        return make_config(b.n_sites, b.raw_mean_splitting, b.raw_disorder_width,
                           b.raw_coupling, value, b.dimension, b.boundary);
    if (plan.swept == "n_sites")
        return make_config(static_cast<int>(value), b.raw_mean_splitting,
                           b.raw_disorder_width, b.raw_coupling, b.raw_temperature,
                           b.dimension, b.boundary);
    throw ValidationError("unknown swept parameter '" + plan.swept + "'");
}

namespace {

std::string tag(int point, int realization) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "p%03d_r%04d", point, realization);
    return buf;
}

struct Recorder {
    std::filesystem::path dir;
    std::mutex mtx;
    std::vector<std::string> files;
    std::vector<FailureRecord> failures;

    // csv artifacts carry a .json sidecar; raw files do not
    void add(const std::filesystem::path& rel) {
        std::lock_guard<std::mutex> lock(mtx);
        files.push_back(rel.string());
        if (rel.extension() == ".csv") files.push_back(rel.string() + ".json");
    }
    void add_raw(const std::filesystem::path& rel) {
        std::lock_guard<std::mutex> lock(mtx);
        files.push_back(rel.string());
    }
    void fail(int point, int realization, const std::string& what) {
        std::lock_guard<std::mutex> lock(mtx);
        failures.push_back({point, realization, what});
    }
};

json saddle_json(const SaddleSolution& sol) {
    return json{{"x0", sol.x0},
                {"y0", sol.y0},
                {"r0", sol.r0},
                {"residual_multiplier", sol.residual_multiplier},
                {"residual_mode_sum", sol.residual_mode_sum},
                {"finite_size_warning", sol.finite_size_warning},
                {"synchronized_limit", sol.synchronized_limit}};
}

// One (point, realization) task; returns summary values for the point table.
struct RealizationSummary {
    bool ok = false;
    double solver_r0 = 0.0;
    double drop_count = 0.0;
    FrequencyField field;  // saddle/noninteracting/mcmc-final field
};

RealizationSummary run_realization(const SweepPlan& plan, const ModelConfig& cfg,
                                   Pipeline pipe, int point, int realization,
                                   Recorder& rec) {
    RealizationSummary out;
    const std::uint64_t seed = derive_seed(plan.master_seed, point, realization);
    const DisorderRealization real = sample_disorder(cfg, seed);
    const std::string t = tag(point, realization);

    if (pipe == Pipeline::noninteracting) {
        out.field = sample_noninteracting(real, cfg, mix64(seed));
        const auto rel = std::filesystem::path(t + "_field_noninteracting.csv");
        write_field(rec.dir / rel, out.field, cfg);
        rec.add(rel);
    } else if (pipe == Pipeline::mcmc) {
        ChainResult chain = sample_mcmc(real, cfg, plan.chain, mix64(seed));
        out.field = chain.fields.back();
        const auto rel = std::filesystem::path(t + "_field_mcmc.csv");
        write_field(rec.dir / rel, out.field, cfg,
                    json{{"acceptance", chain.acceptance_rate},
                         {"step", chain.step},
                         {"tau_int", chain.tau_int}}
                        .dump());
        rec.add(rel);
    } else if (pipe == Pipeline::saddle) {
        auto [field, sol] = saddle_filter(real, cfg);
        out.field = std::move(field);
        out.solver_r0 = sol.r0;
        const auto rel = std::filesystem::path(t + "_field_saddle.csv");
        write_field(rec.dir / rel, out.field, cfg, saddle_json(sol).dump());
        rec.add(rel);
    } else if (pipe == Pipeline::spectrum) {
        auto [field, sol] = saddle_filter(real, cfg);
        out.solver_r0 = sol.r0;
        const TransmissionSpectrum spec = transmission(field, plan.spectrum);
        const double thr = 0.5 * plan.spectrum.alpha / (plan.spectrum.gamma * plan.spectrum.gamma);
        const DropSet drops = detect_drops(spec, thr);
        out.drop_count = static_cast<double>(drops.drops.size());
        const auto spec_rel = std::filesystem::path(t + "_spectrum.csv");
        write_spectrum(rec.dir / spec_rel, spec);
        rec.add(spec_rel);
        const auto drop_rel = std::filesystem::path(t + "_drops.json");
        write_drops(rec.dir / drop_rel, drops);
        rec.add_raw(drop_rel);
    } else if (pipe == Pipeline::oracle) {
        const ModelConfig open_cfg =
            make_config(cfg.n_sites, cfg.raw_mean_splitting, cfg.raw_disorder_width,
                        cfg.raw_coupling, cfg.raw_temperature, 1, Boundary::open);
        const SpinonSpectrum s =
            free_fermion_solve(SpinChainSpec::from_realization(real, open_cfg));
        CsvTable tspec;
        tspec.columns = {"index", "energy", "ipr", "loc_length"};
        for (int k = 0; k < s.n_sites; ++k)
            tspec.rows.push_back({static_cast<double>(k), s.energies[k], s.iprs[k],
                                  std::isfinite(s.loc_lengths[k]) ? s.loc_lengths[k] : -1.0});
        const auto rel = std::filesystem::path(t + "_spinon.csv");
        write_csv(rec.dir / rel, tspec);
        {
            std::ofstream side(rec.dir / (rel.string() + ".json"), std::ios::binary);
            side << json{{"schema_version", 1},
                         {"kind", "spinon_spectrum"},
                         {"boundary", "open"},
                         {"bulk_model_boundary", to_string(cfg.boundary)},
                         {"spin_convention", "s = sigma/2"},
                         {"seed", seed}}
                        .dump(2)
                 << "\n";
        }
        rec.add(rel);
    }
    out.ok = true;
    return out;
}

} // namespace

RunManifest run_sweep(const SweepPlan& plan) {
    namespace fs = std::filesystem;
    if (plan.values.empty()) throw ValidationError("sweep: empty value list");
    if (plan.realizations < 1) throw ValidationError("sweep: realizations must be >= 1");
    fs::create_directories(plan.out_dir);
    if (!fs::is_directory(plan.out_dir))
        throw ValidationError("sweep: cannot create output directory " + plan.out_dir.string());

    const auto t_start = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.master_seed = plan.master_seed;
    manifest.config_hash = plan.base.hash();
    manifest.pipeline = to_string(plan.pipeline);
    manifest.swept = plan.swept;
    manifest.values = plan.values;
    manifest.realizations = plan.realizations;
    manifest.kernel_backend = kernels::backend();

    Recorder rec;
    rec.dir = plan.out_dir;

    std::vector<Pipeline> pipes;
    if (plan.pipeline == Pipeline::all)
        pipes = {Pipeline::noninteracting, Pipeline::mcmc, Pipeline::saddle,
                 Pipeline::spectrum, Pipeline::oracle};
    else
        pipes = {plan.pipeline};

    CsvTable scaling;
    scaling.columns = {"value", "kappa", "mean_solver_r0", "fitted_r0", "fit_amplitude",
                       "fit_residual", "mean_drop_count", "predicted_drop_count"};

    for (std::size_t p = 0; p < plan.values.size(); ++p) {
        const auto t_point = std::chrono::steady_clock::now();
        const ModelConfig cfg = point_config(plan, plan.values[p]);

        double mean_r0 = 0.0, fitted_r0 = 0.0, fit_amp = 0.0, fit_res = 0.0;
        double mean_count = 0.0, predicted_count = 0.0;
        for (Pipeline pipe : pipes) {
            std::vector<RealizationSummary> sums(plan.realizations);
            parallel_for(plan.realizations, [&](int r) {
                try {
                    sums[r] = run_realization(plan, cfg, pipe, static_cast<int>(p), r, rec);
                } catch (const std::exception& e) {
                    rec.fail(static_cast<int>(p), r, e.what());
                }
            });

            std::vector<FrequencyField> fields;
            int n_ok = 0;
            double r0_acc = 0.0, count_acc = 0.0;
            for (auto& s : sums) {
                if (!s.ok) continue;
                ++n_ok;
                r0_acc += s.solver_r0;
                count_acc += s.drop_count;
                if (!s.field.frequencies.empty()) fields.push_back(std::move(s.field));
            }
            if (n_ok > 0) {
                if (pipe == Pipeline::saddle || pipe == Pipeline::spectrum)
                    mean_r0 = r0_acc / n_ok;
                if (pipe == Pipeline::spectrum) mean_count = count_acc / n_ok;
            }

            if (pipe == Pipeline::saddle && static_cast<int>(fields.size()) >= 20) {
                const CorrelationEstimate est = estimate_correlation(fields, cfg);
                const R0Fit fit = fit_r0(est, cfg.length() / 2.0);
                fitted_r0 = fit.r0;
                fit_amp = fit.amplitude;
                fit_res = fit.residual;
                char name[64];
                std::snprintf(name, sizeof(name), "p%03zu_correlation.csv", p);
                write_correlation(rec.dir / name, est, cfg, &fit);
                rec.add(name);
            }
            if (pipe == Pipeline::spectrum && cfg.coupling > 0.0 && cfg.disorder_width > 0.0) {
                const double ratio = cfg.disorder_width / cfg.coupling;
                predicted_count = std::max(1.0, 0.5 * cfg.n_sites * ratio * ratio);
            }
        }

        scaling.rows.push_back({plan.values[p], std::isfinite(cfg.kappa()) ? cfg.kappa() : -1.0,
                                mean_r0, fitted_r0, fit_amp, fit_res, mean_count,
                                predicted_count});
        manifest.point_seconds.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_point).count());
    }

    write_csv(plan.out_dir / "summary.csv", scaling);
    rec.add_raw("summary.csv");

    manifest.failures = rec.failures;
    std::sort(rec.files.begin(), rec.files.end());
    for (const std::string& f : rec.files) {
        ManifestFile mf;
        mf.path = f;
        mf.bytes = std::filesystem::file_size(plan.out_dir / f);
        mf.digest = file_digest(plan.out_dir / f);
        manifest.files.push_back(std::move(mf));
    }
    manifest.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(plan.out_dir, manifest);
    return manifest;
}

void write_manifest(const std::filesystem::path& out_dir, const RunManifest& m) {
    json files = json::array();
    for (const auto& f : m.files)
        files.push_back(json{{"path", f.path}, {"bytes", f.bytes}, {"fnv1a64", f.digest}});
    json fails = json::array();
    for (const auto& f : m.failures)
        fails.push_back(json{{"point", f.point}, {"realization", f.realization},
                             {"error", f.error}});
    json j{{"schema_version", 1},
           {"kind", "run_manifest"},
           {"master_seed", m.master_seed},
           {"config_hash", m.config_hash},
           {"pipeline", m.pipeline},
           {"swept", m.swept},
           {"values", m.values},
           {"realizations", m.realizations},
           {"kernel_backend", m.kernel_backend},
           {"total_seconds", m.total_seconds},
           {"point_seconds", m.point_seconds},
           {"failures", std::move(fails)},
           {"files", std::move(files)}};
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    if (!out) throw ValidationError("cannot write manifest in " + out_dir.string());
    out << j.dump(2) << "\n";
}

RunManifest read_manifest(const std::filesystem::path& out_dir) {
    std::ifstream in(out_dir / "manifest.json", std::ios::binary);
    if (!in) throw ValidationError("no manifest.json in " + out_dir.string());
    json j = json::parse(in);
    RunManifest m;
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.config_hash = j.at("config_hash").get<std::uint64_t>();
    m.pipeline = j.at("pipeline").get<std::string>();
    m.swept = j.at("swept").get<std::string>();
    m.values = j.at("values").get<std::vector<double>>();
    m.realizations = j.at("realizations").get<int>();
    m.kernel_backend = j.at("kernel_backend").get<std::string>();
    for (const auto& f : j.at("files"))
        m.files.push_back({f.at("path").get<std::string>(), f.at("bytes").get<std::uint64_t>(),
                           f.at("fnv1a64").get<std::uint64_t>()});
    for (const auto& f : j.at("failures"))
        m.failures.push_back({f.at("point").get<int>(), f.at("realization").get<int>(),
                              f.at("error").get<std::string>()});
    return m;
}

} // namespace sqm
