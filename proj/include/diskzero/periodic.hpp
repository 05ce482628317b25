#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace diskzero {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to (-pi, pi].
double normalize_angle(double theta);

enum class Interpolation { trigonometric, piecewise_linear };

struct PeriodicNode;

/// A 2pi-periodic real function built from closed forms, uniform samples,
/// and positive combinations of those. Immutable; copies share structure.
class PeriodicFunction {
public:
    static PeriodicFunction truncated_cosine(double rho);
    static PeriodicFunction constant(double c);
    static PeriodicFunction support(std::vector<std::complex<double>> points);
    static PeriodicFunction sampled(std::vector<double> values,
                                    Interpolation interpolation = Interpolation::trigonometric);
    /// Samples fn on theta_j = 2 pi j / n.
    static PeriodicFunction sampled_from(const std::function<double(double)>& fn, std::size_t n,
                                         Interpolation interpolation = Interpolation::trigonometric);
    static PeriodicFunction positive_part(PeriodicFunction inner);
    /// max(0, -inner).
    static PeriodicFunction negative_part(PeriodicFunction inner);
    static PeriodicFunction scaled(double c, PeriodicFunction inner);
    static PeriodicFunction sum(PeriodicFunction left, PeriodicFunction right);

    double operator()(double theta) const;

    const PeriodicNode& node() const { return *node_; }

    /// True when no sampled data appears anywhere in the expression tree.
    bool closed_form() const;

    /// Short human-readable identifier, e.g. "pos(samples[512,trig])".
    std::string describe() const;

private:
    explicit PeriodicFunction(std::shared_ptr<const PeriodicNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const PeriodicNode> node_;
};

struct TruncatedCosine {
    double rho;
};
struct Constant {
    double c;
};
struct SupportFunction {
    std::vector<std::complex<double>> points;
};
struct Sampled {
    std::vector<double> values;
    Interpolation interpolation;
    // Real Fourier coefficients of the band-limited interpolant: a[0..N/2], b[0..N/2].
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
};
struct PositivePart {
    PeriodicFunction inner;
};
struct NegativePart {
    PeriodicFunction inner;
};
struct Scaled {
    double c;
    PeriodicFunction inner;
};
struct Sum {
    PeriodicFunction left;
    PeriodicFunction right;
};

struct PeriodicNode
    : std::variant<TruncatedCosine, Constant, SupportFunction, Sampled, PositivePart, NegativePart, Scaled,
                   Sum> {
    using variant::variant;
};

inline double eval(const PeriodicFunction& h, double theta) { return h(theta); }

inline PeriodicFunction positive_part(PeriodicFunction h) {
    return PeriodicFunction::positive_part(std::move(h));
}

inline PeriodicFunction support_function(std::vector<std::complex<double>> points) {
    return PeriodicFunction::support(std::move(points));
}

/// Values of h on theta_j = 2 pi j / n, j = 0..n-1.
std::vector<double> grid_values(const PeriodicFunction& h, std::size_t n);

double max_value(const PeriodicFunction& h, std::size_t n = 4096);
double min_value(const PeriodicFunction& h, std::size_t n = 4096);

/// Largest |h(theta_{j+1}) - h(theta_j)| over the n-point mesh.
double max_adjacent_jump(const PeriodicFunction& h, std::size_t n);

/// Angles in (-pi, pi] where h may fail to be twice differentiable.
/// Piecewise-linear samples report every node.
std::vector<double> kink_angles(const PeriodicFunction& h);

/// 1e-9 for closed forms, 1e-6 (1 + max|h|) when samples are involved.
double default_tolerance(const PeriodicFunction& h);

struct TrigWitness {
    double theta1;
    double theta;
    double theta2;
    double defect;
};

struct TrigConvexityReport {
    std::string method;  // "sine_kernel", "second_difference" or "sine_kernel_random"
    double rho = 0.0;
    std::size_t n_grid = 0;
    double tol = 0.0;
    bool passed = false;
    double max_defect = 0.0;
    std::vector<TrigWitness> witnesses;
};

/// Sine-kernel interpolation test on the n_grid mesh. theta1 and theta2 run
/// over mesh nodes with theta2 - theta1 <= pi/rho - pi/(rho n_grid); theta runs
/// over at most n_grid/8 interior mesh nodes per pair. rho = 0 tests constancy.
TrigConvexityReport check_trig_convex(const PeriodicFunction& h, double rho, std::size_t n_grid = 512,
                                      std::optional<double> tol = std::nullopt);

/// Same defect on randomly drawn off-mesh triples; reproducible for a seed.
TrigConvexityReport check_trig_convex_random(const PeriodicFunction& h, double rho, std::size_t n_triples,
                                             std::uint64_t seed, std::optional<double> tol = std::nullopt);

/// Centered second difference plus the discrete rho^2 symbol
/// (2 sin(rho d / 2) / d)^2, so that rho-sinusoids give exactly zero.
/// The reported defect is the negated value; passed iff min >= -tol.
TrigConvexityReport check_second_derivative(const PeriodicFunction& h, double rho, std::size_t n_grid = 512,
                                            std::optional<double> tol = std::nullopt);

struct RadialSamples {
    std::vector<double> radii;                // strictly increasing
    std::vector<double> angles;               // theta_i = 2 pi i / N
    std::vector<std::vector<double>> values;  // values[j][i] = u(radii[j] e^{i angles[i]})
};

RadialSamples sample_radial(const std::function<double(std::complex<double>)>& u, std::vector<double> radii,
                            std::size_t n_theta);

/// Finite-radius stand-in for the rho-indicator: max over the upper half of the
/// radii of u / R^rho, per angle.
PeriodicFunction rho_indicator_estimate(const RadialSamples& samples, double rho);

/// Smallest rho in [0, 64] (bisection to width tol) at which check_trig_convex
/// passes. Requires h >= 0 on the grid.
double min_rho(const PeriodicFunction& h, double tol, std::size_t n_grid = 512);

}  // namespace diskzero
