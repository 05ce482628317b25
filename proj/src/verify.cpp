#include "diskzero/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace diskzero {

namespace {

// 1/phi: consecutive angles 2 pi {k / phi} are equidistributed with low discrepancy.
constexpr double kGoldenFraction = 0.6180339887498949;

std::string fmt_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double fixed_or_weyl(const std::optional<double>& theta0, std::size_t k) {
    if (theta0) return *theta0;
    const double frac = std::fmod(static_cast<double>(k) * kGoldenFraction, 1.0);
    return kTwoPi * frac;
}

DiskCharge as_charge(const USide& u) {
    if (const auto* d = std::get_if<Divisor>(&u)) return atomize(*d);
    return std::get<DiskCharge>(u);
}

}  // namespace

SequenceGenerator SequenceGenerator::power_law(double alpha, std::optional<double> theta0) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("power-law exponent must be > 0");
    if (theta0 && !std::isfinite(*theta0)) throw std::invalid_argument("theta0 must be finite");
    return SequenceGenerator(PowerLaw{alpha}, theta0);
}

SequenceGenerator SequenceGenerator::geometric(double q, std::optional<double> theta0) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("geometric ratio must lie in (0, 1)");
    if (theta0 && !std::isfinite(*theta0)) throw std::invalid_argument("theta0 must be finite");
    return SequenceGenerator(Geometric{q}, theta0);
}

SequenceGenerator SequenceGenerator::explicit_divisor(Divisor divisor) {
    return SequenceGenerator(Explicit{std::move(divisor)}, std::nullopt);
}

void SequenceGenerator::for_each(double eps, const std::function<void(double, double, int)>& fn,
                                 std::size_t max_points) const {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("truncation eps must lie in (0, 1)");
    const double cutoff = 1.0 - eps;
    if (const auto* e = std::get_if<Explicit>(&kind_)) {
        for (const auto& [p, m] : e->divisor.entries())
            if (p.r < cutoff) fn(p.r, p.theta, m);
        return;
    }
    std::size_t emitted = 0;
    for (std::size_t k = 1;; ++k) {
        double r;
        if (const auto* pl = std::get_if<PowerLaw>(&kind_))
            r = 1.0 - std::pow(static_cast<double>(k), -pl->alpha);
        else
            r = 1.0 - std::pow(std::get<Geometric>(kind_).q, static_cast<double>(k));
        if (!(r < cutoff)) return;
        if (++emitted > max_points) throw std::invalid_argument("truncation produces too many points; raise eps");
        fn(r, fixed_or_weyl(theta0_, k), 1);
    }
}

Divisor SequenceGenerator::truncate(double eps) const {
    Divisor d;
    for_each(eps, [&d](double r, double theta, int m) { d.add(r, theta, m); });
    return d;
}

std::string SequenceGenerator::describe() const {
    const std::string angle = theta0_ ? "theta0=" + fmt_number(*theta0_) : "equidistributed";
    if (const auto* pl = std::get_if<PowerLaw>(&kind_))
        return "power_law(alpha=" + fmt_number(pl->alpha) + "," + angle + ")";
    if (const auto* g = std::get_if<Geometric>(&kind_)) return "geometric(q=" + fmt_number(g->q) + "," + angle + ")";
    return "explicit[" + std::to_string(std::get<Explicit>(kind_).divisor.support_size()) + "]";
}

CheckedWeights validate_weights(const GrowthGauge& g, const PeriodicFunction& h, double rho, bool rescale) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be finite and >= 0");
    PeriodicFunction hh = h;
    bool rescaled = false;
    if (rescale) {
        const double top = max_value(h);
        if (!(top > 0.0)) throw std::invalid_argument("cannot rescale h with max h <= 0");
        if (top != 1.0) {
            hh = PeriodicFunction::scaled(1.0 / top, h);
            rescaled = true;
        }
    }
    const auto gauge = check_gauge_class(g);
    const auto trig = check_trig_convex(hh, rho);
    const double lo = min_value(hh);
    const double hi = max_value(hh);
    const double range_tol = default_tolerance(hh);
    std::string problems;
    if (!gauge.convex_ok) problems += " gauge not convex;";
    if (!gauge.zero_at_zero_ok) problems += " g(0) != 0;";
    if (!gauge.normalized_ok) problems += " g(1) > 1;";
    if (!trig.passed) problems += " h not trig-convex at rho;";
    if (lo < -range_tol || hi > 1.0 + range_tol) problems += " h leaves [0, 1];";
    if (!problems.empty()) {
        problems.pop_back();
        throw PreconditionError("weights fail the admissibility checks:" + problems, gauge, trig, lo, hi);
    }
    return CheckedWeights{g, std::move(hh), rho, rescaled};
}

InequalityReport main_inequality_sides(const USide& u_side, const DiskCharge& m_charge, const CheckedWeights& w,
                                       double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
    const GrowthGauge& g = w.g;
    const auto kernel = [&g](double t) { return g((1.0 - t) / t); };
    InequalityReport rep;
    rep.epsilon = eps;
    rep.rho = w.rho;
    rep.g_descriptor = g.describe();
    rep.h_descriptor = w.h.describe();
    rep.lhs = stieltjes(kernel, counting_function(as_charge(u_side), w.h), 0.5, 1.0 - eps);
    rep.rhs_integral = stieltjes(kernel, counting_function(m_charge, w.h), 0.5, 1.0 - eps);
    rep.gap = rep.lhs - rep.rhs_integral;
    return rep;
}

InequalityReport main_inequality_sides(const USide& u_side, const DiskCharge& m_charge, const GrowthGauge& g,
                                       const PeriodicFunction& h, double rho, double eps) {
    return main_inequality_sides(u_side, m_charge, validate_weights(g, h, rho), eps);
}

EmpiricalConstant empirical_constant(const USide& u_side, const DiskCharge& m_charge,
                                     const std::vector<CheckedWeights>& family, double eps) {
    if (family.empty()) throw std::invalid_argument("empirical constant needs a nonempty family");
    EmpiricalConstant out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        try {
            out.cells.push_back(main_inequality_sides(u_side, m_charge, family[i], eps));
        } catch (const std::exception& e) {
            throw std::invalid_argument("family member " + std::to_string(i) + ": " + e.what());
        }
        const double v = std::max(0.0, out.cells.back().gap);
        if (v > out.value) {
            out.value = v;
            out.argmax = i;
        }
    }
    return out;
}

EmpiricalConstant empirical_constant(const USide& u_side, const DiskCharge& m_charge,
                                     const std::vector<FamilyMember>& family, double eps) {
    std::vector<CheckedWeights> checked;
    checked.reserve(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        try {
            checked.push_back(validate_weights(family[i].g, family[i].h, family[i].rho));
        } catch (const std::exception& e) {
            throw std::invalid_argument("family member " + std::to_string(i) + ": " + e.what());
        }
    }
    return empirical_constant(u_side, m_charge, checked, eps);
}

const char* to_string(Classification c) { return c == Classification::ForcesZero ? "ForcesZero" : "Inconclusive"; }

UniquenessAudit uniqueness_audit(const SequenceGenerator& z, const MSide& m, const GrowthGauge& g,
                                 const PeriodicFunction& h, const UniquenessOptions& opts) {
    if (opts.levels < 8) throw std::invalid_argument("uniqueness audit needs at least 8 levels");
    if (opts.levels > 60) throw std::invalid_argument("uniqueness audit supports at most 60 levels");
    if (opts.window < 1 || opts.window >= opts.levels) throw std::invalid_argument("window must lie in [1, levels)");
    if (!(opts.tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (!(g(1.0) > 0.0)) throw std::invalid_argument("uniqueness audit needs g(1) > 0");
    if (!(max_value(h) > 0.0)) throw std::invalid_argument("uniqueness audit needs max h > 0");

    const std::size_t J = opts.levels;
    UniquenessAudit a;
    for (std::size_t j = 1; j <= J; ++j) a.epsilons.push_back(std::ldexp(1.0, -static_cast<int>(j)));
    const double eps_min = a.epsilons.back();

    // A point with 1 - r in (eps_j+1, eps_j] first enters at level j + 1.
    std::vector<double> bucket(J, 0.0);
    z.for_each(eps_min, [&](double r, double theta, int mult) {
        if (!(r > 0.5)) return;
        std::size_t level = 0;
        while (level < J && !(r < 1.0 - a.epsilons[level])) ++level;
        if (level < J) bucket[level] += static_cast<double>(mult) * g(1.0 - r) * h(theta);
    });
    double acc = 0.0;
    for (double b : bucket) {
        acc += b;
        a.zero_partials.push_back(acc);
    }

    const DiskCharge m_charge = std::holds_alternative<DiskCharge>(m)
                                    ? std::get<DiskCharge>(m)
                                    : atomize(std::get<SequenceGenerator>(m).truncate(eps_min));
    const auto mu_rad = counting_function(m_charge, h);
    const auto kernel = [&g](double t) { return g(2.0 * (1.0 - t)); };
    for (double eps : a.epsilons) a.majorant_partials.push_back(eps < 0.5 ? stieltjes(kernel, mu_rad, 0.5, 1.0 - eps) : 0.0);

    const auto last_increments = [&](const std::vector<double>& p) {
        std::vector<double> inc;
        for (std::size_t i = 0; i < opts.window; ++i) inc.push_back(p[J - 1 - i] - p[J - 2 - i]);
        return inc;
    };
    const double m_now = a.majorant_partials.back();
    const double z_now = a.zero_partials.back();
    const auto m_inc = last_increments(a.majorant_partials);
    const auto z_inc = last_increments(a.zero_partials);
    a.majorant_stalls = std::all_of(m_inc.begin(), m_inc.end(), [&](double d) { return d <= opts.tau * m_now; });
    a.zeros_grow = std::all_of(z_inc.begin(), z_inc.end(), [&](double d) { return d > opts.tau * z_now; });
    a.classification = a.majorant_stalls && a.zeros_grow ? Classification::ForcesZero : Classification::Inconclusive;
    return a;
}

std::vector<double> blaschke_partials(const SequenceGenerator& z, std::size_t levels) {
    if (levels < 1 || levels > 60) throw std::invalid_argument("levels must lie in [1, 60]");
    std::vector<double> eps(levels);
    for (std::size_t j = 0; j < levels; ++j) eps[j] = std::ldexp(1.0, -static_cast<int>(j + 1));
    std::vector<double> bucket(levels, 0.0);
    z.for_each(eps.back(), [&](double r, double, int mult) {
        std::size_t level = 0;
        while (level < levels && !(r < 1.0 - eps[level])) ++level;
        if (level < levels) bucket[level] += static_cast<double>(mult) * (1.0 - r);
    });
    std::vector<double> out;
    double acc = 0.0;
    for (double b : bucket) out.push_back(acc += b);
    return out;
}

}  // namespace diskzero
