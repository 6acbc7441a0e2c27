#include "sqm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sqm/errors.hpp"
#include "sqm/rng.hpp"

namespace sqm {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, p);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + path.string());
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ValidationError("csv row width mismatch writing " + path.string());
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << "\n";
    }
    if (!out) throw ValidationError("write failed: " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open: " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("empty csv: " + path.string());
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            double v;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc())
                throw ValidationError("bad number '" + cell + "' in " + path.string());
            row.push_back(v);
        }
        if (row.size() != table.columns.size())
            throw ValidationError("ragged csv row in " + path.string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::uint64_t file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

namespace {

json units_block(const ModelConfig& cfg) {
    return json{{"hbar", 1.0},
                {"k_B", 1.0},
                {"mean_splitting", 1.0},
                {"lattice_spacing", 1.0},
                {"external_mean_splitting", cfg.raw_mean_splitting}};
}

void write_sidecar(const std::filesystem::path& csv_path, json j) {
    std::filesystem::path side = csv_path;
    side += ".json";
    std::ofstream out(side, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + side.string());
    out << j.dump(2) << "\n";
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

void write_realization(const std::filesystem::path& csv_path, const DisorderRealization& real,
                       const ModelConfig& cfg) {
    CsvTable t;
    t.columns = {"index", "splitting"};
    t.rows.reserve(real.splittings.size());
    for (std::size_t i = 0; i < real.splittings.size(); ++i)
        t.rows.push_back({static_cast<double>(i), real.splittings[i]});
    write_csv(csv_path, t);
    write_sidecar(csv_path, json{{"schema_version", 1},
                                 {"kind", "disorder_realization"},
                                 {"seed", real.seed},
                                 {"config_hash", hex64(real.config_hash)},
                                 {"units", units_block(cfg)}});
}

void write_field(const std::filesystem::path& csv_path, const FrequencyField& field,
                 const ModelConfig& cfg, const std::string& extra_json) {
    CsvTable t;
    t.columns = {"index", "frequency"};
    t.rows.reserve(field.frequencies.size());
    for (std::size_t i = 0; i < field.frequencies.size(); ++i)
        t.rows.push_back({static_cast<double>(i), field.frequencies[i]});
    write_csv(csv_path, t);
    json j{{"schema_version", 1},
           {"kind", "frequency_field"},
           {"method", to_string(field.method)},
           {"realization_seed", field.realization_seed},
           {"config_hash", hex64(field.config_hash)},
           {"units", units_block(cfg)}};
    if (!extra_json.empty()) j["details"] = json::parse(extra_json);
    write_sidecar(csv_path, std::move(j));
}

void write_correlation(const std::filesystem::path& csv_path, const CorrelationEstimate& est,
                       const ModelConfig& cfg, const R0Fit* fit) {
    CsvTable t;
    t.columns = {"separation", "r_value", "std_error"};
    for (std::size_t i = 0; i < est.separations.size(); ++i)
        t.rows.push_back({est.separations[i], est.r_values[i], est.std_errors[i]});
    write_csv(csv_path, t);
    json j{{"schema_version", 1},
           {"kind", "correlation_estimate"},
           {"n_realizations", est.n_realizations},
           {"config_hash", hex64(est.config_hash)},
           {"units", units_block(cfg)}};
    if (fit) {
        j["fit"] = json{{"r0", fit->r0},
                        {"amplitude", fit->amplitude},
                        {"residual", fit->residual},
                        {"boundary_pinned", fit->boundary_pinned}};
    }
    write_sidecar(csv_path, std::move(j));
}

void write_spectrum(const std::filesystem::path& csv_path, const TransmissionSpectrum& spec) {
    CsvTable t;
    t.columns = {"omega", "transmission"};
    for (std::size_t i = 0; i < spec.grid.size(); ++i)
        t.rows.push_back({spec.grid[i], spec.values[i]});
    write_csv(csv_path, t);
    write_sidecar(csv_path, json{{"schema_version", 1},
                                 {"kind", "transmission_spectrum"},
                                 {"alpha", spec.params.alpha},
                                 {"gamma", spec.params.gamma},
                                 {"config_hash", hex64(spec.config_hash)}});
}

void write_drops(const std::filesystem::path& json_path, const DropSet& drops) {
    json arr = json::array();
    for (const Drop& d : drops.drops)
        arr.push_back(json{{"center", d.center},
                           {"depth", d.depth},
                           {"half_width", d.half_width},
                           {"member_count", d.member_count}});
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open for writing: " + json_path.string());
    out << json{{"schema_version", 1},
                {"kind", "drop_set"},
                {"threshold", drops.threshold},
                {"drops", std::move(arr)}}
               .dump(2)
        << "\n";
}

CorrelationEstimate read_correlation(const std::filesystem::path& csv_path) {
    const CsvTable t = read_csv(csv_path);
    if (t.columns != std::vector<std::string>{"separation", "r_value", "std_error"})
        throw ValidationError("not a correlation csv: " + csv_path.string());
    CorrelationEstimate est;
    for (const auto& row : t.rows) {
        est.separations.push_back(row[0]);
        est.r_values.push_back(row[1]);
        est.std_errors.push_back(row[2]);
    }
    return est;
}

} // namespace sqm
