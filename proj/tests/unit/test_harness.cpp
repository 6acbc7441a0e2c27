#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "sqm/errors.hpp"
#include "sqm/io.hpp"
#include "sqm/parallel.hpp"
#include "sqm/plots.hpp"
#include "sqm/sweep.hpp"

using namespace sqm;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

SweepPlan small_saddle_plan(const fs::path& dir, std::uint64_t seed) {
    SweepPlan plan;
    plan.base = make_config(256, 1.0, 0.01, 0.02, 0.1);
    plan.spectrum = SpectrumParams::defaults_for(plan.base);
    plan.swept = "kappa";
    plan.values = {2.0, 3.0};
    plan.realizations = 24;
    plan.pipeline = Pipeline::saddle;
    plan.master_seed = seed;
    plan.out_dir = dir;
    return plan;
}

} // namespace

TEST_CASE("format_double is stable and precise") {
    CHECK(format_double(0.1) == format_double(0.1));
    CHECK(format_double(1.0) == "1");
    const double v = 0.12345678901234567;
    double back = 0.0;
    const std::string s = format_double(v);
    std::sscanf(s.c_str(), "%lf", &back);
    CHECK(back == v);
}

TEST_CASE("csv round-trip") {
    const fs::path dir = fresh_dir("sqm_csv_test");
    CsvTable t;
    t.columns = {"a", "b"};
    t.rows = {{1.5, -2.25}, {3.0, 0.1}};
    write_csv(dir / "t.csv", t);
    const CsvTable back = read_csv(dir / "t.csv");
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
}

TEST_CASE("single point, single realization produces one field csv + sidecar + manifest") {
    const fs::path dir = fresh_dir("sqm_sweep_single");
    SweepPlan plan;
    plan.base = make_config(64, 1.0, 0.01, 0.03, 0.1);
    plan.spectrum = SpectrumParams::defaults_for(plan.base);
    plan.realizations = 1;
    plan.pipeline = Pipeline::saddle;
    plan.master_seed = 5;
    plan.out_dir = dir;
    const RunManifest m = run_sweep(plan);
    CHECK(m.failures.empty());

    int field_csv = 0;
    for (const auto& f : m.files)
        if (f.path.find("_field_saddle.csv") != std::string::npos &&
            f.path.find(".json") == std::string::npos)
            ++field_csv;
    CHECK(field_csv == 1);
    CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("manifest lists every produced file with a matching digest") {
    const fs::path dir = fresh_dir("sqm_sweep_manifest");
    const RunManifest m = run_sweep(small_saddle_plan(dir, 11));

    std::set<std::string> on_disk;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string rel = fs::relative(e.path(), dir).string();
        if (rel != "manifest.json") on_disk.insert(rel);
    }
    std::set<std::string> listed;
    for (const auto& f : m.files) {
        listed.insert(f.path);
        CHECK(file_digest(dir / f.path) == f.digest);
        CHECK(fs::file_size(dir / f.path) == f.bytes);
    }
    CHECK(on_disk == listed);
}

TEST_CASE("reruns are byte-identical regardless of thread count") {
    const fs::path d1 = fresh_dir("sqm_sweep_rep1");
    const fs::path d2 = fresh_dir("sqm_sweep_rep2");
    set_thread_count(1);
    const RunManifest m1 = run_sweep(small_saddle_plan(d1, 99));
    set_thread_count(8);
    const RunManifest m2 = run_sweep(small_saddle_plan(d2, 99));
    set_thread_count(0);

    REQUIRE(m1.files.size() == m2.files.size());
    for (std::size_t i = 0; i < m1.files.size(); ++i) {
        CHECK(m1.files[i].path == m2.files[i].path);
        CHECK(m1.files[i].digest == m2.files[i].digest);
    }
}

TEST_CASE("failed realizations are recorded and skipped") {
    const fs::path dir = fresh_dir("sqm_sweep_fail");
    SweepPlan plan;
    // zero coupling makes the saddle solver reject every realization
    plan.base = make_config(64, 1.0, 0.01, 0.0, 0.1);
    plan.spectrum = SpectrumParams::defaults_for(plan.base);
    plan.realizations = 5;
    plan.pipeline = Pipeline::saddle;
    plan.master_seed = 1;
    plan.out_dir = dir;
    const RunManifest m = run_sweep(plan);
    CHECK(m.failures.size() == 5);
    CHECK(m.failure_fraction() == doctest::Approx(1.0));
    CHECK(fs::exists(dir / "manifest.json"));  // manifest still written last
}

TEST_CASE("plots render from a finished run and report missing inputs") {
    const fs::path dir = fresh_dir("sqm_plots");
    run_sweep(small_saddle_plan(dir, 21));
    const PlotReport rep = emit_plots(dir);
    // saddle pipeline provides correlation + scaling, but no spectra
    CHECK(std::find(rep.written.begin(), rep.written.end(), "correlation.svg") !=
          rep.written.end());
    CHECK(std::find(rep.written.begin(), rep.written.end(), "scaling.svg") !=
          rep.written.end());
    REQUIRE(rep.skipped.size() == 1);
    CHECK(rep.skipped[0].find("spectrum") != std::string::npos);
    CHECK(fs::exists(dir / "correlation.svg"));

    // empty directory: no manifest, plotting refuses
    const fs::path empty = fresh_dir("sqm_plots_empty");
    CHECK_THROWS_AS(emit_plots(empty), ValidationError);
}

TEST_CASE("sweep point config derivation") {
    SweepPlan plan;
    plan.base = make_config(64, 1.0, 0.01, 0.02, 0.1);
    plan.swept = "kappa";
    CHECK(point_config(plan, 4.0).coupling == doctest::Approx(0.04));
    plan.swept = "temperature";
    CHECK(point_config(plan, 0.2).temperature == doctest::Approx(0.2));
    plan.swept = "n_sites";
    CHECK(point_config(plan, 128).n_sites == 128);
    plan.swept = "nonsense";
    CHECK_THROWS_AS(point_config(plan, 1.0), ValidationError);
}
