#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace sqm {

enum class Boundary { periodic, open };

/// Validated model description. Raw energies (mean splitting, disorder
/// width, coupling, temperature) are given in one common external unit;
/// internally everything is rescaled to hbar = k_B = 1, mean splitting = 1,
/// lattice spacing = 1. The `raw_*` fields keep the inputs so the mapping
/// round-trips exactly.
struct ModelConfig {
    int n_sites = 0;            // sites per row (total sites = n_sites^dimension)
    int dimension = 1;          // 1 or 2
    Boundary boundary = Boundary::periodic;

    double raw_mean_splitting = 1.0;
    double raw_disorder_width = 0.0;
    double raw_coupling = 0.0;
    double raw_temperature = 0.0;

    // Internal (dimensionless) values; mean_splitting == 1 by construction.
    double disorder_width = 0.0;  // delta-Delta / Delta
    double coupling = 0.0;        // Ktilde / Delta
    double temperature = 0.0;     // k_B T / Delta

    int total_sites() const { return dimension == 2 ? n_sites * n_sites : n_sites; }
    double length() const { return static_cast<double>(n_sites); }  // L = N a, a = 1

    /// kappa = Ktilde / delta-Delta; infinity when the disorder width is 0.
    double kappa() const;

    /// Digest of the canonical key=value form; identifies the config in
    /// sidecars and manifests.
    std::uint64_t hash() const;
    std::string canonical_text() const;
};

/// Transmission-spectrum parameters. Defaults derive from the model:
/// gamma = 0.1 * disorder_width, alpha = 0.05 * gamma^2, step = gamma / 5.
struct SpectrumParams {
    double alpha = 0.0;       // line strength, (frequency)^2
    double gamma = 0.0;       // linewidth, frequency
    double grid_min = 0.0;
    double grid_max = 0.0;
    double grid_step = 0.0;

    static SpectrumParams defaults_for(const ModelConfig& cfg);
    void validate() const;
};

/// Validates raw parameters and normalizes to internal units.
/// Rejects n_sites < 2, non-positive temperature/splitting, negative widths,
/// and the out-of-regime cases disorder_width >= mean_splitting and
/// coupling >= mean_splitting.
ModelConfig make_config(int n_sites, double mean_splitting, double disorder_width,
                        double coupling, double temperature, int dimension = 1,
                        Boundary boundary = Boundary::periodic);

/// Reads the versioned key=value config file (see README for the schema).
/// Unknown keys are errors.
ModelConfig load_config(const std::filesystem::path& file);

/// Spectrum parameters from the same file; keys are optional and fall back
/// to defaults_for(cfg).
SpectrumParams load_spectrum_params(const std::filesystem::path& file, const ModelConfig& cfg);

std::string to_string(Boundary b);

} // namespace sqm
