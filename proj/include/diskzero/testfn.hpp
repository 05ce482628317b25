#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "diskzero/gauge.hpp"
#include "diskzero/periodic.hpp"

namespace diskzero {

/// max(1/2, 1 - 1/rho^2); 1/2 for rho = 0.
double r_rho(double rho);

/// z = r e^{i theta} -> g((1 - r)/r) h(theta) on the annulus r_rho < r < 1.
struct TestFunctionSpec {
    GrowthGauge gauge;
    PeriodicFunction h;
    double rho;
    double r_rho;
    double b_rho;  // g((1 - r_rho)/r_rho) max h
};

TestFunctionSpec make_test_function(GrowthGauge gauge, PeriodicFunction h, double rho);

double eval_test(const TestFunctionSpec& spec, double r, double theta);

using PolarField = std::function<double(double r, double theta)>;

/// v_rr + v_r / r + v_thth / r^2 from centered differences.
double polar_laplacian(const PolarField& v, double r, double theta, double dr, double dtheta);

/// Assembles the polar Laplacian from the five stencil values.
double assemble_polar_laplacian(double center, double r_plus, double r_minus, double t_plus, double t_minus,
                                double r, double dr, double dtheta);

struct AuditGrid {
    std::size_t n_r = 256;
    std::size_t n_theta = 512;
    std::optional<double> r_min;  // defaults to r_rho + delta
    std::optional<double> r_max;  // defaults to 1 - delta
};

struct LaplacianWitness {
    double r;
    double theta;
    double laplacian;
    double lower_bound;
};

struct SubharmonicityReport {
    double r_min = 0.0;
    double r_max = 0.0;
    double dr = 0.0;
    double dtheta = 0.0;
    double theta_offset = 0.0;
    std::size_t n_r = 0;
    std::size_t n_theta = 0;
    double tol = 0.0;

    double min_laplacian = 0.0;
    double scale = 1.0;  // max |laplacian| over audited nodes
    bool lower_bound_ok = false;  // min_laplacian >= -tol * scale

    // Pointwise bound (1/r^2)(1/(1-r) - rho^2) g(1/r - 1) h(theta), compared
    // against a Richardson-extrapolated Laplacian at smooth nodes.
    bool pointwise_bound_ok = false;
    double max_pointwise_violation = 0.0;  // max of (bound - laplacian), in units of scale

    std::size_t audited_nodes = 0;
    std::size_t skipped_nodes = 0;  // stencils straddling a kink of g or h
    std::vector<double> kink_angles;
    std::vector<double> kink_radii;

    std::vector<double> row_radius;
    std::vector<double> row_min_laplacian;
    std::vector<LaplacianWitness> witnesses;  // most negative audited nodes
};

/// Numerical subharmonicity check on r in [r_rho + delta, 1 - delta],
/// delta = max(dr, 0.005), unless the grid overrides the range.
SubharmonicityReport subharmonicity_audit(const TestFunctionSpec& spec, const AuditGrid& grid = {},
                                          double tol = 1e-6);

struct MembershipReport {
    bool positive_ok = false;
    bool bounded_ok = false;
    bool boundary_zero_ok = false;
    double min_value = 0.0;
    double sup_value = 0.0;
    double b_rho = 0.0;
    std::vector<double> epsilons;        // 0.1, 0.01, 0.001
    std::vector<double> boundary_values;  // max over theta of v(1 - eps, theta)
};

MembershipReport membership_audit(const TestFunctionSpec& spec, std::size_t n_boundary = 512, double tol = 1e-9);

}  // namespace diskzero
