#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sqm/config.hpp"
#include "sqm/gibbs.hpp"

namespace sqm {

enum class Pipeline { noninteracting, mcmc, saddle, spectrum, oracle, all };

Pipeline pipeline_from_string(const std::string& name);
std::string to_string(Pipeline p);

/// A reproducible experiment: one swept parameter, a list of values, a fixed
/// number of realizations per point. Per-realization seeds derive from
/// (master_seed, point index, realization index) only, so any parallel
/// schedule produces identical numbers.
struct SweepPlan {
    ModelConfig base;
    SpectrumParams spectrum;          // used by the spectrum pipeline
    std::string swept = "none";       // none | kappa | temperature | n_sites
    std::vector<double> values = {0}; // ignored for "none"
    int realizations = 1;
    Pipeline pipeline = Pipeline::saddle;
    std::uint64_t master_seed = 0;
    std::filesystem::path out_dir;
    ChainOptions chain;               // mcmc pipeline options
};

struct ManifestFile {
    std::string path;   // relative to out_dir
    std::uint64_t bytes = 0;
    std::uint64_t digest = 0;
};

struct FailureRecord {
    int point = 0;
    int realization = 0;
    std::string error;
};

struct RunManifest {
    std::uint64_t master_seed = 0;
    std::uint64_t config_hash = 0;
    std::string pipeline;
    std::string swept;
    std::vector<double> values;
    int realizations = 0;
    std::string kernel_backend;
    double total_seconds = 0.0;
    std::vector<double> point_seconds;
    std::vector<FailureRecord> failures;
    std::vector<ManifestFile> files;   // sorted by path; every produced file

    double failure_fraction() const;
};

/// Executes the plan, writing per-realization CSV artifacts with JSON
/// sidecars, per-point summaries, a sweep-level summary, and finally
/// manifest.json. A failed realization is recorded and skipped; the caller
/// decides what failure fraction is fatal (the CLI exits 3 above 10%).
RunManifest run_sweep(const SweepPlan& plan);

/// Derives the config of one sweep point from the base config.
ModelConfig point_config(const SweepPlan& plan, double value);

void write_manifest(const std::filesystem::path& out_dir, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& out_dir);

} // namespace sqm
