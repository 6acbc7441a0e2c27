#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sqm {

struct PlotReport {
    std::vector<std::string> written;   // svg paths, relative to the run dir
    std::vector<std::string> skipped;   // human-readable skip notices
};

/// Renders SVG figures from a finished run directory (manifest required):
///   - spectrum.svg     transmission with detected drops marked
///   - correlation.svg  R(x) with the fitted decay curve and r0 annotation
///   - scaling.svg      log-log fitted r0 against kappa with the fitted slope
/// `selection` limits which figures are attempted (empty = all). Missing
/// inputs produce skip notices; other figures are still written.
PlotReport emit_plots(const std::filesystem::path& run_dir,
                      const std::vector<std::string>& selection = {});

} // namespace sqm
