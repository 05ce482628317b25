#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace diskzero {

/// Convex growth gauge g: [0, inf) -> [0, inf) with g(0) = 0.
class GrowthGauge {
public:
    struct Power {
        double p;
    };
    struct Linear {
        double slope;
    };
    /// Breakpoints start at (0, 0); beyond the last one the last slope continues.
    /// Convexity is not enforced here; check_gauge_class reports it.
    struct PiecewiseLinear {
        std::vector<std::pair<double, double>> points;
    };
    using Kind = std::variant<Power, Linear, PiecewiseLinear>;

    static GrowthGauge power(double p);
    static GrowthGauge linear(double slope);
    static GrowthGauge piecewise(std::vector<std::pair<double, double>> points);

    double operator()(double x) const;

    const Kind& kind() const { return kind_; }
    std::string describe() const;

    /// Interior breakpoints x > 0 where g is not C^2.
    std::vector<double> breakpoints() const;

private:
    explicit GrowthGauge(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

double eval_gauge(const GrowthGauge& g, double x);

struct GaugeClassReport {
    bool convex_ok = false;
    bool zero_at_zero_ok = false;
    bool normalized_ok = false;
    double max_convexity_violation = 0.0;
    double value_at_one = 0.0;

    bool all_ok() const { return convex_ok && zero_at_zero_ok && normalized_ok; }
};

/// Midpoint convexity over all node pairs of an n_grid mesh of [0, 2],
/// g(0) = 0, and g(1) <= 1 + tol.
GaugeClassReport check_gauge_class(const GrowthGauge& g, std::size_t n_grid = 256, double tol = 1e-12);

struct GxReport {
    bool derivative_bound_ok = false;
    bool increasing_ok = false;
    double worst_derivative_gap = 0.0;  // min over mesh of D+g(x) - g(x)/x
    std::size_t n_points = 0;
};

/// Forward-difference check of g'(x) >= g(x)/x on a log-spaced mesh of
/// [1e-6, 1], plus monotonicity along the same mesh (with 0 prepended).
GxReport check_gx(const GrowthGauge& g, std::size_t n_grid = 256, double tol = 1e-9);

/// Log-spaced mesh of [1e-6, 1] used by check_gx.
std::vector<double> gx_mesh(std::size_t n_grid);

}  // namespace diskzero
