#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sqm/correlation.hpp"
#include "sqm/disorder.hpp"
#include "sqm/field.hpp"
#include "sqm/spectrum.hpp"

namespace sqm {

/// Locale-independent decimal rendering with 17 significant digits; the
/// same bits always produce the same bytes.
std::string format_double(double v);

/// Minimal CSV table: header row + numeric columns, written with
/// format_double. read_csv parses files produced by write_csv.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

std::uint64_t file_digest(const std::filesystem::path& path);

// Canonical artifact writers: CSV payload plus a JSON sidecar carrying the
// seeds, hashes and method metadata needed to regenerate the file.
void write_realization(const std::filesystem::path& csv_path, const DisorderRealization& real,
                       const ModelConfig& cfg);
void write_field(const std::filesystem::path& csv_path, const FrequencyField& field,
                 const ModelConfig& cfg, const std::string& extra_json = {});
void write_correlation(const std::filesystem::path& csv_path, const CorrelationEstimate& est,
                       const ModelConfig& cfg, const R0Fit* fit);
void write_spectrum(const std::filesystem::path& csv_path, const TransmissionSpectrum& spec);
void write_drops(const std::filesystem::path& json_path, const DropSet& drops);

CorrelationEstimate read_correlation(const std::filesystem::path& csv_path);

} // namespace sqm
