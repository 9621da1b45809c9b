#pragma once

#include <string>
#include <vector>

namespace radcom::report {

struct Series {
    std::string name;
    std::vector<double> values;  // aligned with the x grid
};

// Accuracy-vs-SNR line chart, y fixed to [0,1].
std::string svg_line_chart(const std::string& title, const std::vector<int>& x, const std::vector<Series>& series);

// Row-normalized confusion heatmap. Zero cells render white; the fill
// saturates with count/row-total.
std::string svg_heatmap(const std::string& title, const std::vector<std::vector<int>>& matrix,
                        const std::vector<std::string>& names);

// Cell fill used by svg_heatmap for a row-normalized intensity in [0,1].
std::string heatmap_color(double intensity);

}  // namespace radcom::report
