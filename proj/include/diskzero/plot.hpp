#pragma once

#include <string>
#include <vector>

namespace diskzero {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotLabels {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Self-contained SVG line chart with axes, ticks and a legend.
std::string plot_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels);

/// Writes plot_svg to path. Throws InputError on empty series or an unwritable path.
void render_plot(const std::vector<PlotSeries>& series, const std::string& path, const PlotLabels& labels = {});

}  // namespace diskzero
