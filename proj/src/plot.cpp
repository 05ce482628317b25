#include "diskzero/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "diskzero/json_io.hpp"

namespace diskzero {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 180, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

}  // namespace

std::string plot_svg(const std::vector<PlotSeries>& series, const PlotLabels& labels) {
    if (series.empty()) throw InputError("plot needs at least one series");
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw InputError("plot series \"" + s.label + "\" has mismatched x/y lengths");
        if (s.x.empty()) throw InputError("plot series \"" + s.label + "\" is empty");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!std::isfinite(x0)) throw InputError("plot series contain no finite points");
    if (x1 == x0) x1 = x0 + 1.0, x0 -= 1.0;
    if (y1 == y0) y1 = y0 + 1.0, y0 -= 1.0;

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    const auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!labels.title.empty())
        os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
           << escape(labels.title) << "</text>\n";

    os << "<g stroke=\"black\" fill=\"none\">\n"
       << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph << "\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double fx = kLeft + pw * k / 5.0, fy = kTop + ph * (1.0 - k / 5.0);
        os << "<line x1=\"" << num(fx) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(fx) << "\" y2=\""
           << num(kTop + ph + 5) << "\"/>\n"
           << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(fy) << "\" x2=\"" << num(kLeft) << "\" y2=\""
           << num(fy) << "\"/>\n";
    }
    os << "</g>\n<g>\n";
    for (int k = 0; k <= 5; ++k) {
        const double fx = kLeft + pw * k / 5.0, fy = kTop + ph * (1.0 - k / 5.0);
        os << "<text x=\"" << num(fx) << "\" y=\"" << num(kTop + ph + 20) << "\" text-anchor=\"middle\">"
           << tick_label(x0 + (x1 - x0) * k / 5.0) << "</text>\n"
           << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(fy + 4) << "\" text-anchor=\"end\">"
           << tick_label(y0 + (y1 - y0) * k / 5.0) << "</text>\n";
    }
    if (!labels.x_label.empty())
        os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15) << "\" text-anchor=\"middle\">"
           << escape(labels.x_label) << "</text>\n";
    if (!labels.y_label.empty())
        os << "<text x=\"20\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
           << num(kTop + ph / 2) << ")\">" << escape(labels.y_label) << "</text>\n";
    os << "</g>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kPalette[i % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            os << (first ? "" : " ") << num(px(s.x[k])) << ',' << num(py(s.y[k]));
            first = false;
        }
        os << "\"/>\n";
        const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
        os << "<line x1=\"" << num(kWidth - kRight + 15) << "\" y1=\"" << num(ly) << "\" x2=\""
           << num(kWidth - kRight + 40) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << num(kWidth - kRight + 46) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void render_plot(const std::vector<PlotSeries>& series, const std::string& path, const PlotLabels& labels) {
    const std::string svg = plot_svg(series, labels);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open plot path for writing: " + path);
    out << svg;
    out.flush();
    if (!out) throw InputError("failed writing plot to " + path);
}

}  // namespace diskzero
