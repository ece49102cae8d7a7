#include "chainctl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chainctl {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 60;

struct LogAxis {
    double lo_exp, hi_exp;

    explicit LogAxis(const std::vector<double>& values) {
        double lo = 1.0;
        double hi = 1e-300;
        for (double v : values) {
            const double c = std::max(v, 1e-16);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        lo_exp = std::floor(std::log10(lo));
        hi_exp = std::ceil(std::log10(std::max(hi, lo * 10)));
        if (hi_exp - lo_exp < 1) hi_exp = lo_exp + 1;
    }

    double y(double v) const {
        const double e = std::log10(std::max(v, 1e-16));
        const double frac = (e - lo_exp) / (hi_exp - lo_exp);
        return kHeight - kMarginBottom - frac * (kHeight - kMarginTop - kMarginBottom);
    }
};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void grid_and_frame(std::ostringstream& os, const LogAxis& axis, const std::string& title,
                    const std::string& ylabel) {
    os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
          "font-family=\"sans-serif\">"
       << escape(title) << "</text>\n";
    for (int e = static_cast<int>(axis.lo_exp); e <= static_cast<int>(axis.hi_exp); ++e) {
        const double yy = axis.y(std::pow(10.0, e));
        os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << yy << "\" x2=\""
           << kWidth - kMarginRight << "\" y2=\"" << yy
           << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << yy + 4
           << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1e" << e
           << "</text>\n";
    }
    os << "<text x=\"16\" y=\"" << kHeight / 2
       << "\" font-size=\"12\" font-family=\"sans-serif\" transform=\"rotate(-90 16 "
       << kHeight / 2 << ")\" text-anchor=\"middle\">" << escape(ylabel) << "</text>\n";
}

void save(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n"
        << body << "</svg>\n";
}

}  // namespace

void write_restart_scatter_svg(const std::string& path, const std::vector<double>& errors,
                               const std::string& title) {
    if (errors.empty()) {
        throw std::invalid_argument("write_restart_scatter_svg: no data");
    }
    const LogAxis axis(errors);
    std::ostringstream os;
    grid_and_frame(os, axis, title, "gate error");

    const double span = static_cast<double>(kWidth - kMarginLeft - kMarginRight);
    const std::size_t count = errors.size();
    for (std::size_t i = 0; i < count; ++i) {
        const double x =
            kMarginLeft + span * (count == 1 ? 0.5 : static_cast<double>(i) / (count - 1));
        os << "<circle cx=\"" << x << "\" cy=\"" << axis.y(errors[i])
           << "\" r=\"4\" fill=\"#2266aa\" fill-opacity=\"0.8\"/>\n";
    }
    os << "<text x=\"" << (kWidth + kMarginLeft - kMarginRight) / 2 << "\" y=\""
       << kHeight - 20 << "\" text-anchor=\"middle\" font-size=\"12\" "
          "font-family=\"sans-serif\">restart</text>\n";
    save(path, os.str());
}

void write_residual_bars_svg(const std::string& path,
                             const std::vector<std::pair<std::string, double>>& residuals,
                             const std::string& title) {
    if (residuals.empty()) {
        throw std::invalid_argument("write_residual_bars_svg: no data");
    }
    std::vector<double> values;
    values.reserve(residuals.size());
    for (const auto& [name, v] : residuals) values.push_back(v);
    const LogAxis axis(values);

    std::ostringstream os;
    grid_and_frame(os, axis, title, "max-abs residual");

    const double span = static_cast<double>(kWidth - kMarginLeft - kMarginRight);
    const double slot = span / static_cast<double>(residuals.size());
    const double bar = std::max(2.0, slot * 0.7);
    const double base = axis.y(std::pow(10.0, axis.lo_exp));
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        const double x = kMarginLeft + slot * (static_cast<double>(i) + 0.15);
        const double top = axis.y(residuals[i].second);
        os << "<rect x=\"" << x << "\" y=\"" << top << "\" width=\"" << bar << "\" height=\""
           << std::max(0.0, base - top) << "\" fill=\"#2266aa\" fill-opacity=\"0.85\"/>\n";
        if (residuals.size() <= 40) {
            const double cx = x + bar / 2;
            os << "<text x=\"" << cx << "\" y=\"" << base + 10
               << "\" font-size=\"8\" font-family=\"sans-serif\" text-anchor=\"end\" "
                  "transform=\"rotate(-60 "
               << cx << " " << base + 10 << ")\">" << escape(residuals[i].first) << "</text>\n";
        }
    }
    save(path, os.str());
}

}  // namespace chainctl
