#include "diskzero/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "diskzero/parallel.hpp"

namespace diskzero {

double r_rho(double rho) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be finite and >= 0");
    if (rho == 0.0) return 0.5;
    const double rho2 = rho * rho;
    return std::max(0.5, (rho2 - 1.0) / rho2);
}

TestFunctionSpec make_test_function(GrowthGauge gauge, PeriodicFunction h, double rho) {
    const double rr = r_rho(rho);
    const double b = gauge((1.0 - rr) / rr) * max_value(h);
    return TestFunctionSpec{std::move(gauge), std::move(h), rho, rr, b};
}

double eval_test(const TestFunctionSpec& spec, double r, double theta) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("test functions live on 0 < r < 1");
    return spec.gauge((1.0 - r) / r) * spec.h(theta);
}

double assemble_polar_laplacian(double center, double r_plus, double r_minus, double t_plus, double t_minus,
                                double r, double dr, double dtheta) {
    const double v_rr = (r_plus - 2.0 * center + r_minus) / (dr * dr);
    const double v_r = (r_plus - r_minus) / (2.0 * dr);
    const double v_tt = (t_plus - 2.0 * center + t_minus) / (dtheta * dtheta);
    return v_rr + v_r / r + v_tt / (r * r);
}

double polar_laplacian(const PolarField& v, double r, double theta, double dr, double dtheta) {
    if (!(dr > 0.0) || !(dtheta > 0.0)) throw std::invalid_argument("stencil steps must be positive");
    if (!(r - dr > 0.0) || !(r + dr < 1.0)) throw std::invalid_argument("stencil leaves the annulus 0 < r < 1");
    return assemble_polar_laplacian(v(r, theta), v(r + dr, theta), v(r - dr, theta), v(r, theta + dtheta),
                                    v(r, theta - dtheta), r, dr, dtheta);
}

SubharmonicityReport subharmonicity_audit(const TestFunctionSpec& spec, const AuditGrid& grid, double tol) {
    if (grid.n_r < 32 || grid.n_theta < 64) throw std::invalid_argument("audit grid too coarse (n_r >= 32, n_theta >= 64)");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

    const double rr = spec.r_rho;
    const double delta0 = 0.005;
    const double delta = std::max((1.0 - rr - 2.0 * delta0) / static_cast<double>(grid.n_r), delta0);

    SubharmonicityReport rep;
    rep.n_r = grid.n_r;
    rep.n_theta = grid.n_theta;
    rep.tol = tol;
    rep.r_min = grid.r_min.value_or(rr + delta);
    rep.r_max = grid.r_max.value_or(1.0 - delta);
    if (!(rep.r_max > rep.r_min)) throw std::invalid_argument("empty audit range");
    rep.dr = (rep.r_max - rep.r_min) / static_cast<double>(grid.n_r);
    rep.dtheta = kTwoPi / static_cast<double>(grid.n_theta);
    if (!(rep.r_min - rep.dr > 0.0) || !(rep.r_max + rep.dr < 1.0))
        throw std::invalid_argument("stencil leaves the annulus 0 < r < 1");

    rep.kink_angles = kink_angles(spec.h);
    rep.theta_offset = rep.kink_angles.empty() ? 0.0 : rep.kink_angles.front() + 0.5 * rep.dtheta;
    for (double x : spec.gauge.breakpoints()) {
        const double rb = 1.0 / (1.0 + x);
        if (rb > rep.r_min - rep.dr && rb < rep.r_max + rep.dr) rep.kink_radii.push_back(rb);
    }

    const std::size_t n_rows = grid.n_r + 1;
    const std::size_t n_cols = grid.n_theta;

    // Half-step tables: h on theta_offset + k dtheta/2, g-part on r_min - dr + m dr/2.
    std::vector<double> hv(2 * n_cols);
    for (std::size_t k = 0; k < hv.size(); ++k)
        hv[k] = spec.h(rep.theta_offset + 0.5 * rep.dtheta * static_cast<double>(k));
    std::vector<double> gv(2 * grid.n_r + 5);
    for (std::size_t m = 0; m < gv.size(); ++m) {
        const double r = rep.r_min - rep.dr + 0.5 * rep.dr * static_cast<double>(m);
        gv[m] = spec.gauge((1.0 - r) / r);
    }

    std::vector<char> col_skip(n_cols, 0);
    for (std::size_t c = 0; c < n_cols; ++c) {
        const double th = rep.theta_offset + rep.dtheta * static_cast<double>(c);
        for (double k : rep.kink_angles)
            if (std::abs(normalize_angle(th - k)) < rep.dtheta) col_skip[c] = 1;
    }

    const double rho2 = spec.rho * spec.rho;
    const std::size_t workers = worker_count();
    struct Partial {
        double min_lap = std::numeric_limits<double>::infinity();
        double max_abs = 0.0;
        double max_violation = -std::numeric_limits<double>::infinity();
        std::size_t audited = 0, skipped = 0;
        std::vector<LaplacianWitness> worst;
    };
    std::vector<Partial> parts(workers);
    std::vector<double> row_min(n_rows, std::numeric_limits<double>::quiet_NaN());

    parallel_chunks(n_rows, workers, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        Partial& p = parts[chunk];
        for (std::size_t i = begin; i < end; ++i) {
            const double r = rep.r_min + rep.dr * static_cast<double>(i);
            bool row_skip = false;
            for (double rb : rep.kink_radii)
                if (std::abs(r - rb) < rep.dr) row_skip = true;
            if (row_skip) {
                p.skipped += n_cols;
                continue;
            }
            const std::size_t m = 2 + 2 * i;
            double rmin = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < n_cols; ++c) {
                if (col_skip[c]) {
                    ++p.skipped;
                    continue;
                }
                const std::size_t k = 2 * c;
                const auto H = [&](std::ptrdiff_t off) {
                    const auto n = static_cast<std::ptrdiff_t>(hv.size());
                    return hv[static_cast<std::size_t>(((static_cast<std::ptrdiff_t>(k) + off) % n + n) % n)];
                };
                const double g0 = gv[m], h0 = H(0);
                const double coarse = assemble_polar_laplacian(g0 * h0, gv[m + 2] * h0, gv[m - 2] * h0, g0 * H(2),
                                                               g0 * H(-2), r, rep.dr, rep.dtheta);
                const double fine = assemble_polar_laplacian(g0 * h0, gv[m + 1] * h0, gv[m - 1] * h0, g0 * H(1),
                                                             g0 * H(-1), r, 0.5 * rep.dr, 0.5 * rep.dtheta);
                const double extrapolated = (4.0 * fine - coarse) / 3.0;
                const double bound = (1.0 / (r * r)) * (1.0 / (1.0 - r) - rho2) * g0 * h0;

                ++p.audited;
                rmin = std::min(rmin, coarse);
                p.max_abs = std::max(p.max_abs, std::abs(coarse));
                p.max_violation = std::max(p.max_violation, bound - extrapolated);
                if (coarse < p.min_lap) p.min_lap = coarse;
                p.worst.push_back({r, normalize_angle(rep.theta_offset + rep.dtheta * static_cast<double>(c)), coarse,
                                   bound});
                if (p.worst.size() > 64) {
                    std::sort(p.worst.begin(), p.worst.end(),
                              [](const auto& a, const auto& b) { return a.laplacian < b.laplacian; });
                    p.worst.resize(8);
                }
            }
            if (std::isfinite(rmin)) row_min[i] = rmin;
        }
    });

    double min_lap = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    double max_violation = -std::numeric_limits<double>::infinity();
    for (auto& p : parts) {
        min_lap = std::min(min_lap, p.min_lap);
        max_abs = std::max(max_abs, p.max_abs);
        max_violation = std::max(max_violation, p.max_violation);
        rep.audited_nodes += p.audited;
        rep.skipped_nodes += p.skipped;
        rep.witnesses.insert(rep.witnesses.end(), p.worst.begin(), p.worst.end());
    }
    std::sort(rep.witnesses.begin(), rep.witnesses.end(), [](const auto& a, const auto& b) {
        if (a.laplacian != b.laplacian) return a.laplacian < b.laplacian;
        if (a.r != b.r) return a.r < b.r;
        return a.theta < b.theta;
    });
    if (rep.witnesses.size() > 8) rep.witnesses.resize(8);

    for (std::size_t i = 0; i < n_rows; ++i) {
        if (std::isnan(row_min[i])) continue;
        rep.row_radius.push_back(rep.r_min + rep.dr * static_cast<double>(i));
        rep.row_min_laplacian.push_back(row_min[i]);
    }

    if (rep.audited_nodes == 0) throw std::invalid_argument("every audit node straddles a kink");
    rep.min_laplacian = min_lap;
    rep.scale = max_abs > 0.0 ? max_abs : 1.0;
    rep.lower_bound_ok = min_lap >= -tol * rep.scale;
    rep.max_pointwise_violation = max_violation / rep.scale;
    rep.pointwise_bound_ok = max_violation <= tol * rep.scale;
    return rep;
}

MembershipReport membership_audit(const TestFunctionSpec& spec, std::size_t n_boundary, double tol) {
    if (n_boundary < 16) throw std::invalid_argument("n_boundary must be at least 16");
    constexpr std::size_t n_radial = 256;
    const double rr = spec.r_rho;

    std::vector<double> hv(n_boundary);
    for (std::size_t c = 0; c < n_boundary; ++c)
        hv[c] = spec.h(kTwoPi * static_cast<double>(c) / static_cast<double>(n_boundary));

    MembershipReport rep;
    rep.b_rho = spec.b_rho;
    rep.min_value = std::numeric_limits<double>::infinity();
    rep.sup_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < n_radial; ++i) {
        const double r = rr + (1.0 - rr) * static_cast<double>(i) / static_cast<double>(n_radial);
        const double gr = spec.gauge((1.0 - r) / r);
        for (double h : hv) {
            const double v = gr * h;
            rep.min_value = std::min(rep.min_value, v);
            rep.sup_value = std::max(rep.sup_value, v);
        }
    }
    rep.positive_ok = rep.min_value >= -tol;
    rep.bounded_ok = rep.sup_value <= spec.b_rho + tol;

    rep.epsilons = {0.1, 0.01, 0.001};
    for (double eps : rep.epsilons) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < n_boundary; ++c)
            best = std::max(best, eval_test(spec, 1.0 - eps, kTwoPi * static_cast<double>(c) / n_boundary));
        rep.boundary_values.push_back(best);
    }
    // For convex g with g(0) = 0, g(x)/x is nondecreasing, so the decay from
    // the first to the last schedule point is at least x_last / x_first.
    const auto x_of = [](double eps) { return eps / (1.0 - eps); };
    const double ratio = x_of(rep.epsilons.back()) / x_of(rep.epsilons.front());
    bool ok = true;
    for (std::size_t j = 1; j < rep.boundary_values.size(); ++j)
        if (rep.boundary_values[j] > rep.boundary_values[j - 1] + tol) ok = false;
    if (rep.boundary_values.back() > ratio * std::max(rep.boundary_values.front(), 0.0) + tol) ok = false;
    rep.boundary_zero_ok = ok;
    return rep;
}

}  // namespace diskzero
