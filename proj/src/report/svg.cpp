#include "radcom/report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace radcom::report {

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* kPalette[2] = {"#1f77b4", "#d62728"};
}  // namespace

std::string svg_line_chart(const std::string& title, const std::vector<int>& x, const std::vector<Series>& series) {
    const int width = 640, height = 420;
    const double left = 60, right = 600, top = 50, bottom = 370;
    const double x_lo = x.empty() ? 0 : x.front();
    const double x_hi = x.empty() || x.back() == x.front() ? x_lo + 1 : x.back();
    auto px = [&](double v) { return left + (v - x_lo) / (x_hi - x_lo) * (right - left); };
    auto py = [&](double v) { return bottom - v * (bottom - top); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
       << "</text>\n";
    // axes
    os << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\"" << bottom
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
       << "\" stroke=\"black\"/>\n";
    for (int g = 0; g <= 10; g += 2) {
        const double y = py(g / 10.0);
        os << "<line x1=\"" << left - 4 << "\" y1=\"" << y << "\" x2=\"" << right << "\" y2=\"" << y
           << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
           << fmt(g / 10.0) << "</text>\n";
    }
    for (int v : x) {
        os << "<text x=\"" << px(v) << "\" y=\"" << bottom + 16 << "\" text-anchor=\"middle\" font-size=\"10\">"
           << v << "</text>\n";
    }
    os << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 34
       << "\" text-anchor=\"middle\" font-size=\"12\">SNR (dB)</text>\n";
    os << "<text x=\"16\" y=\"" << (top + bottom) / 2
       << "\" font-size=\"12\" transform=\"rotate(-90 16 " << (top + bottom) / 2 << ")\">accuracy</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 2] << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i)
            os << fmt(px(x[i])) << ',' << fmt(py(series[s].values[i])) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << right - 160 << "\" y=\"" << top + 18 * (s + 1) << "\" font-size=\"12\" fill=\""
           << kPalette[s % 2] << "\">" << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap_color(double intensity) {
    if (intensity <= 0.0) return "#ffffff";
    const int level = static_cast<int>(std::lround(255.0 * (1.0 - std::min(1.0, intensity))));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02xff", level, level);
    return buf;
}

std::string svg_heatmap(const std::string& title, const std::vector<std::vector<int>>& matrix,
                        const std::vector<std::string>& names) {
    const int n = static_cast<int>(matrix.size());
    const double cell = 34, left = 150, top = 60;
    const int width = static_cast<int>(left + n * cell + 40);
    const int height = static_cast<int>(top + n * cell + 120);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"26\" text-anchor=\"middle\" font-size=\"15\">" << title
       << "</text>\n";

    for (int i = 0; i < n; ++i) {
        long long row_total = 0;
        for (int v : matrix[static_cast<std::size_t>(i)]) row_total += v;
        for (int j = 0; j < n; ++j) {
            const int count = matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const double intensity = row_total > 0 ? static_cast<double>(count) / static_cast<double>(row_total) : 0.0;
            const double x = left + j * cell, y = top + i * cell;
            os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
               << "\" fill=\"" << heatmap_color(intensity) << "\" stroke=\"#cccccc\"/>\n";
            if (count > 0)
                os << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                   << "\" text-anchor=\"middle\" font-size=\"10\">" << count << "</text>\n";
        }
    }
    for (int i = 0; i < n; ++i) {
        os << "<text x=\"" << left - 6 << "\" y=\"" << top + i * cell + cell / 2 + 4
           << "\" text-anchor=\"end\" font-size=\"10\">" << names[static_cast<std::size_t>(i)] << "</text>\n";
        const double x = left + i * cell + cell / 2, y = top + n * cell + 8;
        os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"10\" transform=\"rotate(60 " << x << ' ' << y
           << ")\">" << names[static_cast<std::size_t>(i)] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace radcom::report
