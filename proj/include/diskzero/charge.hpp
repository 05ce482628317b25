#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diskzero/periodic.hpp"

namespace diskzero {

struct Atom {
    double r;
    double theta;
    double mass;
};

/// Radial density profile on [0, 1).
class RadialProfile {
public:
    /// Piecewise-linear through (t_i, value_i); constant beyond the last node.
    struct Samples {
        std::vector<double> t;
        std::vector<double> values;
    };
    /// coef / (1 - t)^exponent.
    struct BoundaryPower {
        double coef;
        double exponent;
    };
    struct Uniform {
        double value;
    };
    using Kind = std::variant<Samples, BoundaryPower, Uniform>;

    static RadialProfile samples(std::vector<double> t, std::vector<double> values);
    static RadialProfile boundary_power(double coef, double exponent);
    static RadialProfile uniform(double value);

    double operator()(double t) const;
    const Kind& kind() const { return kind_; }
    std::string describe() const;

private:
    explicit RadialProfile(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

enum class SignClip { none, positive, negative };

/// d mu = clip(radial(t) angular(theta)) dt dtheta / (2 pi).
struct ProductDensity {
    RadialProfile radial;
    PeriodicFunction angular;
    SignClip clip = SignClip::none;

    double value(double t, double theta) const;
};

class DiskCharge {
public:
    DiskCharge() = default;
    explicit DiskCharge(std::vector<Atom> atoms, std::optional<ProductDensity> density = std::nullopt);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<ProductDensity>& density() const { return density_; }
    bool empty() const { return atoms_.empty() && !density_; }

private:
    std::vector<Atom> atoms_;
    std::optional<ProductDensity> density_;
};

/// Upper and lower variations: mu = plus - minus, |mu| = plus + minus.
std::pair<DiskCharge, DiskCharge> jordan(const DiskCharge& mu);

/// Composite midpoint on (a, b) with dyadic grading towards b: pieces
/// [b - L 2^-k, b - L 2^-(k+1)] for k < levels plus the final sliver, each
/// with `panels` midpoint panels. Never evaluates f at a or b.
double graded_midpoint(const std::function<double(double)>& f, double a, double b, std::size_t panels = 4096,
                       std::size_t levels = 20);

/// Radial counting function t -> mu(closed disk of radius t; h): right-continuous
/// jumps from atoms plus an absolutely continuous part with rate `rate(t)`.
class RadialCounting {
public:
    RadialCounting(std::vector<std::pair<double, double>> jumps, std::function<double(double)> rate,
                   std::string weight_descriptor);

    /// Value on the closed disk of radius r < 1.
    double value(double r) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    /// Accumulated atom mass at each breakpoint (density part excluded).
    const std::vector<double>& values() const { return cumulative_; }
    const std::vector<double>& jumps() const { return jumps_; }
    bool has_density() const { return static_cast<bool>(rate_); }
    double rate(double t) const { return rate_ ? rate_(t) : 0.0; }
    const std::string& weight_descriptor() const { return weight_; }

    /// CSV "r,value" on the breakpoints merged with an n-point uniform grid of [0, r_max].
    std::string to_csv(std::size_t n = 100, double r_max = 0.99) const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> jumps_;
    std::vector<double> cumulative_;
    std::function<double(double)> rate_;
    std::string weight_;
};

RadialCounting counting_function(const DiskCharge& mu, const PeriodicFunction& h);

/// mu^rad(r; h) over the closed disk of radius r.
double radial_counting(const DiskCharge& mu, double r, const PeriodicFunction& h);

/// Integral of G over the open interval (a, b) against d mu_rad.
double stieltjes(const std::function<double(double)>& G, const RadialCounting& mu_rad, double a, double b);

struct SlicingReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool agreed = false;
};

/// Compares the direct annulus integral of f(t) k(theta) d mu over r < |z| < 1
/// with the Stieltjes integral of f against mu^rad(.; k) over (r, 1).
SlicingReport slicing_identity_check(const DiskCharge& mu, const std::function<double(double)>& f,
                                     const PeriodicFunction& k, double r, double tol);

}  // namespace diskzero
