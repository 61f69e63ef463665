#pragma once

#include <string>
#include <vector>

namespace cepstra {

struct BarDatum {
    std::string label;
    double value = 0.0;
};

/// Horizontal bar chart, one bar per datum, labels on the left. Comment
/// lines are embedded as XML comments at the top of the file.
void write_bar_chart_svg(const std::string& path, const std::string& title,
                         const std::vector<BarDatum>& bars,
                         const std::vector<std::string>& comments = {});

/// Single polyline over (x, y) pairs with axis labels.
void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::vector<std::string>& comments = {});

} // namespace cepstra
