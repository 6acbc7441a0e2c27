#include "sqm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sqm/errors.hpp"
#include "sqm/rng.hpp"

namespace sqm {

double ModelConfig::kappa() const {
    if (disorder_width <= 0.0) return std::numeric_limits<double>::infinity();
    return coupling / disorder_width;
}

std::string ModelConfig::canonical_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "n_sites=" << n_sites << ";dimension=" << dimension
       << ";boundary=" << to_string(boundary)
       << ";mean_splitting=" << raw_mean_splitting
       << ";disorder_width=" << raw_disorder_width
       << ";coupling=" << raw_coupling
       << ";temperature=" << raw_temperature;
    return os.str();
}

std::uint64_t ModelConfig::hash() const {
    return fnv1a64(canonical_text());
}

std::string to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "open";
}

ModelConfig make_config(int n_sites, double mean_splitting, double disorder_width,
                        double coupling, double temperature, int dimension,
                        Boundary boundary) {
    if (n_sites < 2)
        throw ValidationError("n_sites must be >= 2, got " + std::to_string(n_sites));
    if (dimension != 1 && dimension != 2)
        throw ValidationError("dimension must be 1 or 2");
    if (!(mean_splitting > 0.0))
        throw ValidationError("mean_splitting must be positive");
    if (!(temperature > 0.0))
        throw ValidationError("temperature must be positive");
    if (disorder_width < 0.0)
        throw ValidationError("disorder_width must be >= 0");
    if (coupling < 0.0)
        throw ValidationError("coupling must be >= 0");
    if (disorder_width >= mean_splitting)
        throw ValidationError("validity regime requires disorder_width < mean_splitting "
                              "(narrow spread of splittings)");
    if (coupling >= mean_splitting)
        throw ValidationError("validity regime requires coupling < mean_splitting "
                              "(uncorrelated instanton positions)");

    ModelConfig cfg;
    cfg.n_sites = n_sites;
    cfg.dimension = dimension;
    cfg.boundary = boundary;
    cfg.raw_mean_splitting = mean_splitting;
    cfg.raw_disorder_width = disorder_width;
    cfg.raw_coupling = coupling;
    cfg.raw_temperature = temperature;
    cfg.disorder_width = disorder_width / mean_splitting;
    cfg.coupling = coupling / mean_splitting;
    cfg.temperature = temperature / mean_splitting;
    return cfg;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_kv_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ValidationError("cannot open config file: " + file.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(file.string() + ":" + std::to_string(lineno) +
                                  ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ValidationError(file.string() + ":" + std::to_string(lineno) +
                                  ": empty key or value");
        if (kv.count(key))
            throw ValidationError(file.string() + ": duplicate key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

double parse_double(const std::string& key, const std::string& val) {
    double out;
    auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), out);
    if (ec != std::errc() || p != val.data() + val.size())
        throw ValidationError("key '" + key + "': cannot parse '" + val + "' as a number");
    return out;
}

long parse_int(const std::string& key, const std::string& val) {
    long out;
    auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), out);
    if (ec != std::errc() || p != val.data() + val.size())
        throw ValidationError("key '" + key + "': cannot parse '" + val + "' as an integer");
    return out;
}

const char* kModelKeys[] = {"schema_version", "n_sites", "dimension", "boundary",
                            "mean_splitting", "disorder_width", "coupling", "temperature"};
const char* kSpectrumKeys[] = {"alpha", "gamma", "grid_step", "grid_pad"};

void check_known_keys(const std::map<std::string, std::string>& kv,
                      const std::filesystem::path& file) {
    for (const auto& [key, _] : kv) {
        bool known = false;
        for (const char* k : kModelKeys) known = known || key == k;
        for (const char* k : kSpectrumKeys) known = known || key == k;
        if (!known)
            throw ValidationError(file.string() + ": unknown key '" + key + "'");
    }
}

} // namespace

ModelConfig load_config(const std::filesystem::path& file) {
    auto kv = parse_kv_file(file);
    check_known_keys(kv, file);

    auto require = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ValidationError(file.string() + ": missing required key '" +
                                  std::string(key) + "'");
        return it->second;
    };

    long schema = parse_int("schema_version", require("schema_version"));
    if (schema != 1)
        throw ValidationError(file.string() + ": unsupported schema_version " +
                              std::to_string(schema));

    int n_sites = static_cast<int>(parse_int("n_sites", require("n_sites")));
    int dimension = kv.count("dimension")
                        ? static_cast<int>(parse_int("dimension", kv["dimension"]))
                        : 1;
    Boundary boundary = Boundary::periodic;
    if (kv.count("boundary")) {
        const std::string& b = kv["boundary"];
        if (b == "periodic") boundary = Boundary::periodic;
        else if (b == "open") boundary = Boundary::open;
        else throw ValidationError(file.string() + ": boundary must be periodic or open");
    }
    return make_config(n_sites,
                       parse_double("mean_splitting", require("mean_splitting")),
                       parse_double("disorder_width", require("disorder_width")),
                       parse_double("coupling", require("coupling")),
                       parse_double("temperature", require("temperature")),
                       dimension, boundary);
}

SpectrumParams SpectrumParams::defaults_for(const ModelConfig& cfg) {
    SpectrumParams p;
    p.gamma = 0.1 * cfg.disorder_width;
    if (p.gamma <= 0.0) p.gamma = 1e-3;  // degenerate disorder still needs a linewidth
    p.alpha = 0.05 * p.gamma * p.gamma;
    p.grid_step = p.gamma / 5.0;
    // grid_min/grid_max are chosen per frequency field; 0/0 means auto.
    return p;
}

void SpectrumParams::validate() const {
    if (!(alpha > 0.0)) throw ValidationError("spectrum alpha must be positive");
    if (!(gamma > 0.0)) throw ValidationError("spectrum gamma must be positive");
    if (alpha > 0.1 * gamma * gamma)
        throw ValidationError("spectrum requires alpha <= 0.1 * gamma^2 (weak line coupling)");
    if (!(grid_step > 0.0) || grid_step > gamma / 5.0)
        throw ValidationError("spectrum grid_step must be positive and <= gamma / 5");
}

SpectrumParams load_spectrum_params(const std::filesystem::path& file, const ModelConfig& cfg) {
    auto kv = parse_kv_file(file);
    check_known_keys(kv, file);
    SpectrumParams p = SpectrumParams::defaults_for(cfg);
    const double d = cfg.raw_mean_splitting;  // spectrum keys share the external energy unit
    if (kv.count("gamma")) {
        p.gamma = parse_double("gamma", kv["gamma"]) / d;
        p.alpha = 0.05 * p.gamma * p.gamma;
        p.grid_step = p.gamma / 5.0;
    }
    if (kv.count("alpha")) p.alpha = parse_double("alpha", kv["alpha"]) / (d * d);
    if (kv.count("grid_step")) p.grid_step = parse_double("grid_step", kv["grid_step"]) / d;
    p.validate();
    return p;
}

} // namespace sqm
