#include "diskzero/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace diskzero {

namespace {

std::string fmt_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double eval_piecewise(const std::vector<std::pair<double, double>>& pts, double x) {
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    std::size_t hi = static_cast<std::size_t>(it - pts.begin());
    if (hi == 0) return 0.0;
    if (hi == pts.size()) hi = pts.size() - 1;
    const auto& [x0, y0] = pts[hi - 1];
    const auto& [x1, y1] = pts[hi];
    return y0 + (y1 - y0) / (x1 - x0) * (x - x0);
}

}  // namespace

GrowthGauge GrowthGauge::power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("power gauge needs a finite exponent p >= 1");
    return GrowthGauge(Power{p});
}

GrowthGauge GrowthGauge::linear(double slope) {
    if (!(slope > 0.0) || !std::isfinite(slope)) throw std::invalid_argument("linear gauge needs a slope > 0");
    return GrowthGauge(Linear{slope});
}

GrowthGauge GrowthGauge::piecewise(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("piecewise gauge needs at least two points");
    if (points.front().first != 0.0 || points.front().second != 0.0)
        throw std::invalid_argument("piecewise gauge must start at (0, 0)");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [x, y] = points[i];
        if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("piecewise gauge points must be finite");
        if (y < 0.0) throw std::invalid_argument("piecewise gauge values must be >= 0");
        if (i > 0 && !(x > points[i - 1].first))
            throw std::invalid_argument("piecewise gauge breakpoints must be strictly increasing");
    }
    const auto& a = points[points.size() - 2];
    const auto& b = points.back();
    if (b.second < a.second) throw std::invalid_argument("piecewise gauge must not decrease past its last point");
    return GrowthGauge(PiecewiseLinear{std::move(points)});
}

double GrowthGauge::operator()(double x) const {
    if (!(x >= 0.0)) throw std::invalid_argument("gauge argument must be >= 0");
    if (const auto* p = std::get_if<Power>(&kind_)) return std::pow(x, p->p);
    if (const auto* l = std::get_if<Linear>(&kind_)) return l->slope * x;
    return eval_piecewise(std::get<PiecewiseLinear>(kind_).points, x);
}

std::string GrowthGauge::describe() const {
    if (const auto* p = std::get_if<Power>(&kind_)) return "power(" + fmt_number(p->p) + ")";
    if (const auto* l = std::get_if<Linear>(&kind_)) return "linear(" + fmt_number(l->slope) + ")";
    return "piecewise[" + std::to_string(std::get<PiecewiseLinear>(kind_).points.size()) + "]";
}

std::vector<double> GrowthGauge::breakpoints() const {
    std::vector<double> out;
    if (const auto* pw = std::get_if<PiecewiseLinear>(&kind_))
        for (std::size_t i = 1; i + 1 < pw->points.size(); ++i) out.push_back(pw->points[i].first);
    return out;
}

double eval_gauge(const GrowthGauge& g, double x) { return g(x); }

GaugeClassReport check_gauge_class(const GrowthGauge& g, std::size_t n_grid, double tol) {
    if (n_grid < 2) throw std::invalid_argument("n_grid must be at least 2");
    GaugeClassReport report;

    std::vector<double> xs(n_grid + 1), ys(n_grid + 1);
    for (std::size_t i = 0; i <= n_grid; ++i) {
        xs[i] = 2.0 * static_cast<double>(i) / static_cast<double>(n_grid);
        ys[i] = g(xs[i]);
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n_grid; ++i)
        for (std::size_t k = i + 2; k <= n_grid; ++k) {
            const double mid = g(0.5 * (xs[i] + xs[k]));
            worst = std::max(worst, mid - 0.5 * (ys[i] + ys[k]));
        }
    report.max_convexity_violation = std::max(worst, 0.0);
    report.convex_ok = worst <= tol;
    report.zero_at_zero_ok = g(0.0) == 0.0;
    report.value_at_one = g(1.0);
    report.normalized_ok = report.value_at_one <= 1.0 + tol;
    return report;
}

std::vector<double> gx_mesh(std::size_t n_grid) {
    std::vector<double> xs(n_grid);
    for (std::size_t i = 0; i < n_grid; ++i) {
        const double t = n_grid == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n_grid - 1);
        xs[i] = std::pow(10.0, -6.0 + 6.0 * t);
    }
    xs.back() = 1.0;
    return xs;
}

GxReport check_gx(const GrowthGauge& g, std::size_t n_grid, double tol) {
    if (n_grid < 2) throw std::invalid_argument("n_grid must be at least 2");
    GxReport report;
    const auto xs = gx_mesh(n_grid);
    report.n_points = xs.size();

    double worst = std::numeric_limits<double>::infinity();
    for (double x : xs) {
        const double dx = 1e-6 * x;
        const double gx = g(x);
        const double forward = (g(x + dx) - gx) / dx;
        worst = std::min(worst, forward - gx / x);
    }
    report.worst_derivative_gap = worst;
    report.derivative_bound_ok = worst >= -tol;

    bool increasing = true;
    double prev = g(0.0);
    for (double x : xs) {
        const double cur = g(x);
        if (cur < prev - tol) increasing = false;
        prev = cur;
    }
    report.increasing_ok = increasing;
    return report;
}

}  // namespace diskzero
