#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sqm {

/// Bare-bones SVG line/scatter figure with linear or log axes.
class SvgFigure {
public:
    SvgFigure(double x_min, double x_max, double y_min, double y_max,
              bool log_x = false, bool log_y = false);

    void title(const std::string& text) { title_ = text; }
    void x_label(const std::string& text) { x_label_ = text; }
    void y_label(const std::string& text) { y_label_ = text; }

    void polyline(const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& color, double width = 1.5,
                  const std::string& dash = {});
    void scatter(const std::vector<double>& x, const std::vector<double>& y,
                 const std::string& color, double radius = 2.5);
    void error_bars(const std::vector<double>& x, const std::vector<double>& y,
                    const std::vector<double>& err, const std::string& color);
    void vline(double x, const std::string& color, double width = 1.0);
    void annotate(double x, double y, const std::string& text, const std::string& color);

    void write(const std::filesystem::path& path) const;

private:
    double px(double x) const;
    double py(double y) const;

    double x_min_, x_max_, y_min_, y_max_;
    bool log_x_, log_y_;
    std::string title_, x_label_, y_label_;
    std::vector<std::string> body_;
};

} // namespace sqm
