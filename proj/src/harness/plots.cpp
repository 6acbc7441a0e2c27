#include "sqm/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/sweep.hpp"
#include "svg.hpp"

namespace sqm {

using nlohmann::json;

namespace {

bool wanted(const std::vector<std::string>& selection, const std::string& name) {
    return selection.empty() ||
           std::find(selection.begin(), selection.end(), name) != selection.end();
}

const ManifestFile* first_with_suffix(const RunManifest& m, const std::string& suffix) {
    for (const auto& f : m.files)
        if (f.path.size() >= suffix.size() &&
            f.path.compare(f.path.size() - suffix.size(), suffix.size(), suffix) == 0)
            return &f;
    return nullptr;
}

void plot_spectrum(const std::filesystem::path& dir, const RunManifest& m, PlotReport& rep) {
    const ManifestFile* spec = first_with_suffix(m, "_spectrum.csv");
    if (!spec) {
        rep.skipped.push_back("spectrum: no *_spectrum.csv in the run");
        return;
    }
    const CsvTable t = read_csv(dir / spec->path);
    std::vector<double> w, d;
    for (const auto& row : t.rows) { w.push_back(row[0]); d.push_back(row[1]); }
    const double dmin = *std::min_element(d.begin(), d.end());
    SvgFigure fig(w.front(), w.back(), std::min(dmin, 0.99) - 0.01, 1.005);
    fig.title("Transmission");
    fig.x_label("frequency");
    fig.y_label("D");
    fig.polyline(w, d, "#1f77b4", 1.2);

    const std::string drops_path =
        spec->path.substr(0, spec->path.size() - std::string("_spectrum.csv").size()) +
        "_drops.json";
    std::ifstream in(dir / drops_path);
    if (in) {
        json j = json::parse(in);
        for (const auto& drop : j.at("drops"))
            fig.vline(drop.at("center").get<double>(), "#d62728", 0.8);
    }
    fig.write(dir / "spectrum.svg");
    rep.written.push_back("spectrum.svg");
}

void plot_correlation(const std::filesystem::path& dir, const RunManifest& m, PlotReport& rep) {
    const ManifestFile* corr = first_with_suffix(m, "_correlation.csv");
    if (!corr) {
        rep.skipped.push_back("correlation: no *_correlation.csv in the run");
        return;
    }
    const CsvTable t = read_csv(dir / corr->path);
    std::vector<double> x, r, se;
    for (const auto& row : t.rows) {
        x.push_back(row[0]);
        r.push_back(row[1]);
        se.push_back(row[2]);
    }
    double r0 = 0.0, amp = 0.0;
    {
        std::ifstream side(dir / (corr->path + ".json"));
        if (side) {
            json j = json::parse(side);
            if (j.contains("fit")) {
                r0 = j["fit"].at("r0").get<double>();
                amp = j["fit"].at("amplitude").get<double>();
            }
        }
    }
    const double ymax = *std::max_element(r.begin(), r.end());
    const double ymin = *std::min_element(r.begin(), r.end());
    SvgFigure fig(0.0, x.back(), std::min(ymin, 0.0), ymax * 1.1 + 1e-300);
    fig.title("Frequency correlation");
    fig.x_label("separation (a)");
    fig.y_label("R(x)");
    fig.scatter(x, r, "#1f77b4", 2.0);
    fig.error_bars(x, r, se, "#1f77b4");
    if (r0 > 0.0) {
        std::vector<double> xf, yf;
        for (double xx = 0.0; xx <= x.back(); xx += x.back() / 400.0) {
            xf.push_back(xx);
            yf.push_back(amp * (1.0 + xx / r0) * std::exp(-xx / r0));
        }
        fig.polyline(xf, yf, "#d62728", 1.5);
        fig.annotate(x.back() * 0.55, ymax * 0.9, "r0 = " + format_double(r0).substr(0, 8),
                     "#d62728");
    }
    fig.write(dir / "correlation.svg");
    rep.written.push_back("correlation.svg");
}

void plot_scaling(const std::filesystem::path& dir, const RunManifest& m, PlotReport& rep) {
    const ManifestFile* sum = first_with_suffix(m, "summary.csv");
    if (!sum) {
        rep.skipped.push_back("scaling: no summary.csv in the run");
        return;
    }
    const CsvTable t = read_csv(dir / sum->path);
    std::vector<double> kappa, r0;
    for (const auto& row : t.rows) {
        if (row[1] > 0.0 && row[3] > 0.0) {  // kappa, fitted_r0
            kappa.push_back(row[1]);
            r0.push_back(row[3]);
        }
    }
    if (kappa.size() < 2) {
        rep.skipped.push_back("scaling: fewer than 2 points with fitted r0 > 0");
        return;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        const double lx = std::log(kappa[i]), ly = std::log(r0[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(kappa.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;

    SvgFigure fig(kappa.front() * 0.8, kappa.back() * 1.2, *std::min_element(r0.begin(), r0.end()) * 0.8,
                  *std::max_element(r0.begin(), r0.end()) * 1.2, true, true);
    fig.title("Correlation radius scaling");
    fig.x_label("kappa");
    fig.y_label("fitted r0 (a)");
    fig.scatter(kappa, r0, "#1f77b4", 3.0);
    std::vector<double> xf, yf;
    for (double k = kappa.front(); k <= kappa.back() * 1.0001; k *= 1.05) {
        xf.push_back(k);
        yf.push_back(std::exp(icpt + slope * std::log(k)));
    }
    fig.polyline(xf, yf, "#d62728", 1.5, "5,3");
    fig.annotate(kappa.front() * 1.1, r0.back(), "slope = " + format_double(slope).substr(0, 5),
                 "#d62728");
    fig.write(dir / "scaling.svg");
    rep.written.push_back("scaling.svg");
}

} // namespace

PlotReport emit_plots(const std::filesystem::path& run_dir,
                      const std::vector<std::string>& selection) {
    const RunManifest manifest = read_manifest(run_dir);  // throws if absent
    PlotReport rep;
    if (wanted(selection, "spectrum")) plot_spectrum(run_dir, manifest, rep);
    if (wanted(selection, "correlation")) plot_correlation(run_dir, manifest, rep);
    if (wanted(selection, "scaling")) plot_scaling(run_dir, manifest, rep);
    return rep;
}

} // namespace sqm
