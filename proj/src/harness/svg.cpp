#include "svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sqm/errors.hpp"

namespace sqm {

namespace {
constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}
} // namespace

SvgFigure::SvgFigure(double x_min, double x_max, double y_min, double y_max,
                     bool log_x, bool log_y)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max),
      log_x_(log_x), log_y_(log_y) {
    if (log_x_) { x_min_ = std::log10(x_min); x_max_ = std::log10(x_max); }
    if (log_y_) { y_min_ = std::log10(y_min); y_max_ = std::log10(y_max); }
    if (!(x_max_ > x_min_)) x_max_ = x_min_ + 1.0;
    if (!(y_max_ > y_min_)) y_max_ = y_min_ + 1.0;
}

double SvgFigure::px(double x) const {
    if (log_x_) x = std::log10(x);
    return kLeft + (x - x_min_) / (x_max_ - x_min_) * (kWidth - kLeft - kRight);
}

double SvgFigure::py(double y) const {
    if (log_y_) y = std::log10(y);
    return kHeight - kBottom - (y - y_min_) / (y_max_ - y_min_) * (kHeight - kTop - kBottom);
}

void SvgFigure::polyline(const std::vector<double>& x, const std::vector<double>& y,
                         const std::string& color, double width, const std::string& dash) {
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"";
    if (!dash.empty()) os << " stroke-dasharray=\"" << dash << "\"";
    os << " points=\"";
    for (std::size_t i = 0; i < x.size(); ++i)
        os << fmt(px(x[i])) << "," << fmt(py(y[i])) << " ";
    os << "\"/>";
    body_.push_back(os.str());
}

void SvgFigure::scatter(const std::vector<double>& x, const std::vector<double>& y,
                        const std::string& color, double radius) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::ostringstream os;
        os << "<circle cx=\"" << fmt(px(x[i])) << "\" cy=\"" << fmt(py(y[i]))
           << "\" r=\"" << radius << "\" fill=\"" << color << "\"/>";
        body_.push_back(os.str());
    }
}

void SvgFigure::error_bars(const std::vector<double>& x, const std::vector<double>& y,
                           const std::vector<double>& err, const std::string& color) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::ostringstream os;
        os << "<line x1=\"" << fmt(px(x[i])) << "\" x2=\"" << fmt(px(x[i]))
           << "\" y1=\"" << fmt(py(y[i] - err[i])) << "\" y2=\"" << fmt(py(y[i] + err[i]))
           << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>";
        body_.push_back(os.str());
    }
}

void SvgFigure::vline(double x, const std::string& color, double width) {
    std::ostringstream os;
    os << "<line x1=\"" << fmt(px(x)) << "\" x2=\"" << fmt(px(x)) << "\" y1=\""
       << (kHeight - kBottom) << "\" y2=\"" << kTop << "\" stroke=\"" << color
       << "\" stroke-width=\"" << width << "\"/>";
    body_.push_back(os.str());
}

void SvgFigure::annotate(double x, double y, const std::string& text, const std::string& color) {
    std::ostringstream os;
    os << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(y))
       << "\" font-size=\"12\" fill=\"" << color << "\">" << text << "</text>";
    body_.push_back(os.str());
}

void SvgFigure::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes box
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << (kWidth - kLeft - kRight)
        << "\" height=\"" << (kHeight - kTop - kBottom)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // ticks: 5 per axis in internal (possibly log) coordinates
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min_ + (x_max_ - x_min_) * i / 5.0;
        const double xp = kLeft + (kWidth - kLeft - kRight) * i / 5.0;
        out << "<line x1=\"" << xp << "\" x2=\"" << xp << "\" y1=\"" << (kHeight - kBottom)
            << "\" y2=\"" << (kHeight - kBottom + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << xp << "\" y=\"" << (kHeight - kBottom + 18)
            << "\" font-size=\"10\" text-anchor=\"middle\">"
            << fmt(log_x_ ? std::pow(10.0, xv) : xv) << "</text>\n";
        const double yv = y_min_ + (y_max_ - y_min_) * i / 5.0;
        const double yp = kHeight - kBottom - (kHeight - kTop - kBottom) * i / 5.0;
        out << "<line x1=\"" << (kLeft - 5) << "\" x2=\"" << kLeft << "\" y1=\"" << yp
            << "\" y2=\"" << yp << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << (kLeft - 8) << "\" y=\"" << (yp + 3)
            << "\" font-size=\"10\" text-anchor=\"end\">"
            << fmt(log_y_ ? std::pow(10.0, yv) : yv) << "</text>\n";
    }
    if (!title_.empty())
        out << "<text x=\"" << (kWidth / 2) << "\" y=\"20\" font-size=\"14\" "
            << "text-anchor=\"middle\">" << title_ << "</text>\n";
    if (!x_label_.empty())
        out << "<text x=\"" << (kWidth / 2) << "\" y=\"" << (kHeight - 10)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label_ << "</text>\n";
    if (!y_label_.empty())
        out << "<text x=\"15\" y=\"" << (kHeight / 2) << "\" font-size=\"12\" "
            << "text-anchor=\"middle\" transform=\"rotate(-90 15 " << (kHeight / 2) << ")\">"
            << y_label_ << "</text>\n";
    for (const std::string& b : body_) out << b << "\n";
    out << "</svg>\n";
}

} // namespace sqm
