#include "diskzero/charge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace diskzero {

namespace {

constexpr std::size_t kAngularNodes = 4096;

std::string fmt_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double clip_value(SignClip clip, double x) {
    switch (clip) {
        case SignClip::positive:
            return std::max(0.0, x);
        case SignClip::negative:
            return std::max(0.0, -x);
        case SignClip::none:
            break;
    }
    return x;
}

struct AngularRule {
    std::vector<double> theta;
    std::vector<double> weight;  // sums to 1
};

// Quadrature for the mean over a period. Without kinks the periodic trapezoid
// is spectrally accurate; otherwise each smooth arc between kinks gets
// composite 5-point Gauss-Legendre.
AngularRule angular_rule(const std::vector<double>& kinks_in) {
    AngularRule rule;
    std::vector<double> kinks;
    for (double k : kinks_in) kinks.push_back(normalize_angle(k));
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end(), [](double a, double b) { return b - a <= 1e-12; }),
                kinks.end());
    if (kinks.size() > 1 && kinks.front() + kTwoPi - kinks.back() <= 1e-12) kinks.pop_back();

    if (kinks.empty()) {
        for (std::size_t j = 0; j < kAngularNodes; ++j) {
            rule.theta.push_back(kTwoPi * static_cast<double>(j) / static_cast<double>(kAngularNodes));
            rule.weight.push_back(1.0 / static_cast<double>(kAngularNodes));
        }
        return rule;
    }
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                 0.2369268850561891};
    for (std::size_t i = 0; i < kinks.size(); ++i) {
        const double lo = kinks[i];
        const double hi = i + 1 < kinks.size() ? kinks[i + 1] : kinks.front() + kTwoPi;
        const auto panels = static_cast<std::size_t>(
            std::ceil(static_cast<double>(kAngularNodes) * (hi - lo) / (5.0 * kTwoPi)));
        const double width = (hi - lo) / static_cast<double>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            const double mid = lo + (static_cast<double>(p) + 0.5) * width;
            for (int q = 0; q < 5; ++q) {
                rule.theta.push_back(mid + 0.5 * width * gx[q]);
                rule.weight.push_back(0.5 * width * gw[q] / kTwoPi);
            }
        }
    }
    return rule;
}

AngularRule angular_rule(const PeriodicFunction& w, const PeriodicFunction& angular, SignClip part) {
    auto kinks = kink_angles(w);
    const auto more = kink_angles(part == SignClip::none ? angular : PeriodicFunction::positive_part(angular));
    kinks.insert(kinks.end(), more.begin(), more.end());
    return angular_rule(kinks);
}

// (1/2pi) * integral of w(theta) * part(angular)(theta).
double angular_moment(const PeriodicFunction& w, const PeriodicFunction& angular, SignClip part) {
    const auto rule = angular_rule(w, angular, part);
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.theta.size(); ++j)
        acc += rule.weight[j] * w(rule.theta[j]) * clip_value(part, angular(rule.theta[j]));
    return acc;
}

std::function<double(double)> density_rate(const ProductDensity& d, const PeriodicFunction& h) {
    const RadialProfile radial = d.radial;
    if (d.clip == SignClip::none) {
        const double a = angular_moment(h, d.angular, SignClip::none);
        return [radial, a](double t) { return radial(t) * a; };
    }
    const double a_plus = angular_moment(h, d.angular, SignClip::positive);
    const double a_minus = angular_moment(h, d.angular, SignClip::negative);
    // max(0, ra) = r+ a+ + r- a-;  max(0, -ra) = r+ a- + r- a+.
    const double with_rp = d.clip == SignClip::positive ? a_plus : a_minus;
    const double with_rm = d.clip == SignClip::positive ? a_minus : a_plus;
    return [radial, with_rp, with_rm](double t) {
        const double v = radial(t);
        return std::max(0.0, v) * with_rp + std::max(0.0, -v) * with_rm;
    };
}

}  // namespace

RadialProfile RadialProfile::samples(std::vector<double> t, std::vector<double> values) {
    if (t.size() < 2 || t.size() != values.size())
        throw std::invalid_argument("radial samples need matching t/value arrays of length >= 2");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(values[i]))
            throw std::invalid_argument("radial samples must be finite");
        if (t[i] < 0.0 || t[i] >= 1.0) throw std::invalid_argument("radial sample nodes must lie in [0, 1)");
        if (i > 0 && !(t[i] > t[i - 1])) throw std::invalid_argument("radial sample nodes must increase");
    }
    return RadialProfile(Samples{std::move(t), std::move(values)});
}

RadialProfile RadialProfile::boundary_power(double coef, double exponent) {
    if (!std::isfinite(coef) || !std::isfinite(exponent) || exponent < 0.0)
        throw std::invalid_argument("boundary power profile needs finite coef and exponent >= 0");
    return RadialProfile(BoundaryPower{coef, exponent});
}

RadialProfile RadialProfile::uniform(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("uniform profile value must be finite");
    return RadialProfile(Uniform{value});
}

double RadialProfile::operator()(double t) const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) return u->value;
    if (const auto* b = std::get_if<BoundaryPower>(&kind_)) return b->coef / std::pow(1.0 - t, b->exponent);
    const auto& s = std::get<Samples>(kind_);
    if (t <= s.t.front()) return s.values.front();
    if (t >= s.t.back()) return s.values.back();
    const auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - s.t.begin());
    const double w = (t - s.t[hi - 1]) / (s.t[hi] - s.t[hi - 1]);
    return s.values[hi - 1] * (1.0 - w) + s.values[hi] * w;
}

std::string RadialProfile::describe() const {
    if (const auto* u = std::get_if<Uniform>(&kind_)) return "uniform(" + fmt_number(u->value) + ")";
    if (const auto* b = std::get_if<BoundaryPower>(&kind_))
        return fmt_number(b->coef) + "/(1-t)^" + fmt_number(b->exponent);
    return "samples[" + std::to_string(std::get<Samples>(kind_).t.size()) + "]";
}

double ProductDensity::value(double t, double theta) const { return clip_value(clip, radial(t) * angular(theta)); }

DiskCharge::DiskCharge(std::vector<Atom> atoms, std::optional<ProductDensity> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
    for (auto& a : atoms_) {
        if (!std::isfinite(a.r) || !std::isfinite(a.theta) || !std::isfinite(a.mass))
            throw std::invalid_argument("atom fields must be finite");
        if (a.r < 0.0 || a.r >= 1.0) throw std::invalid_argument("atom radius must lie in [0, 1)");
        a.theta = a.r == 0.0 ? 0.0 : normalize_angle(a.theta);
    }
}

std::pair<DiskCharge, DiskCharge> jordan(const DiskCharge& mu) {
    std::vector<Atom> plus, minus;
    for (const auto& a : mu.atoms()) {
        if (a.mass > 0.0) plus.push_back(a);
        if (a.mass < 0.0) minus.push_back({a.r, a.theta, -a.mass});
    }
    std::optional<ProductDensity> dp, dm;
    if (const auto& d = mu.density()) {
        if (d->clip == SignClip::none) {
            dp = ProductDensity{d->radial, d->angular, SignClip::positive};
            dm = ProductDensity{d->radial, d->angular, SignClip::negative};
        } else {
            dp = d;  // clipped densities are already positive measures
        }
    }
    return {DiskCharge(std::move(plus), std::move(dp)), DiskCharge(std::move(minus), std::move(dm))};
}

double graded_midpoint(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                       std::size_t levels) {
    if (!(b > a)) return 0.0;
    if (panels == 0) throw std::invalid_argument("panels must be positive");
    const double length = b - a;
    double total = 0.0;
    const auto piece = [&](double lo, double hi) {
        const double h = (hi - lo) / static_cast<double>(panels);
        double acc = 0.0;
        for (std::size_t i = 0; i < panels; ++i) acc += f(lo + (static_cast<double>(i) + 0.5) * h);
        return acc * h;
    };
    double lo = a;
    for (std::size_t k = 0; k < levels; ++k) {
        const double hi = b - length * std::ldexp(1.0, -static_cast<int>(k + 1));
        total += piece(lo, hi);
        lo = hi;
    }
    total += piece(lo, b);
    return total;
}

RadialCounting::RadialCounting(std::vector<std::pair<double, double>> jumps, std::function<double(double)> rate,
                               std::string weight_descriptor)
    : rate_(std::move(rate)), weight_(std::move(weight_descriptor)) {
    std::stable_sort(jumps.begin(), jumps.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    double acc = 0.0;
    for (const auto& [t, m] : jumps) {
        if (!breakpoints_.empty() && breakpoints_.back() == t) {
            jumps_.back() += m;
        } else {
            breakpoints_.push_back(t);
            jumps_.push_back(m);
        }
    }
    cumulative_.reserve(jumps_.size());
    for (double m : jumps_) {
        acc += m;
        cumulative_.push_back(acc);
    }
}

double RadialCounting::value(double r) const {
    if (!(r < 1.0)) throw std::invalid_argument("radial counting needs r < 1");
    if (r < 0.0) return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
    const std::size_t n = static_cast<std::size_t>(it - breakpoints_.begin());
    double v = n == 0 ? 0.0 : cumulative_[n - 1];
    if (rate_ && r > 0.0) v += graded_midpoint(rate_, 0.0, r);
    return v;
}

std::string RadialCounting::to_csv(std::size_t n, double r_max) const {
    std::vector<double> rs = breakpoints_;
    for (std::size_t i = 0; i <= n; ++i) rs.push_back(r_max * static_cast<double>(i) / static_cast<double>(n));
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    std::ostringstream os;
    os << "r,value\n";
    char buf[64];
    for (double r : rs) {
        if (r >= 1.0) continue;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r, value(r));
        os << buf;
    }
    return os.str();
}

RadialCounting counting_function(const DiskCharge& mu, const PeriodicFunction& h) {
    std::vector<std::pair<double, double>> jumps;
    jumps.reserve(mu.atoms().size());
    for (const auto& a : mu.atoms()) jumps.emplace_back(a.r, a.mass * h(a.theta));
    std::function<double(double)> rate;
    if (const auto& d = mu.density()) rate = density_rate(*d, h);
    return RadialCounting(std::move(jumps), std::move(rate), h.describe());
}

double radial_counting(const DiskCharge& mu, double r, const PeriodicFunction& h) {
    if (!(r < 1.0)) throw std::invalid_argument("radial counting needs r < 1");
    return counting_function(mu, h).value(r);
}

double stieltjes(const std::function<double(double)>& G, const RadialCounting& mu_rad, double a, double b) {
    if (!(a < b) || b > 1.0) throw std::invalid_argument("stieltjes needs a < b <= 1");
    const auto checked = [&G](double t) {
        const double v = G(t);
        if (!std::isfinite(v)) throw std::invalid_argument("integrand is not finite inside (a, b)");
        return v;
    };
    const auto& bp = mu_rad.breakpoints();
    const auto& jumps = mu_rad.jumps();
    double total = 0.0;
    for (auto it = std::upper_bound(bp.begin(), bp.end(), a); it != bp.end() && *it < b; ++it)
        total += checked(*it) * jumps[static_cast<std::size_t>(it - bp.begin())];
    if (mu_rad.has_density())
        total += graded_midpoint([&](double t) { return checked(t) * mu_rad.rate(t); }, a, b);
    return total;
}

SlicingReport slicing_identity_check(const DiskCharge& mu, const std::function<double(double)>& f,
                                     const PeriodicFunction& k, double r, double tol) {
    SlicingReport rep;
    double lhs = 0.0;
    for (const auto& a : mu.atoms())
        if (a.r > r) lhs += a.mass * f(a.r) * k(a.theta);

    if (const auto& d = mu.density()) {
        // The radial clip can flip the sign of the angular factor, so split at its zeros too.
        const auto rule = angular_rule(k, d->angular, SignClip::positive);
        const std::size_t n_theta = rule.theta.size();
        std::vector<double> kv(n_theta), av(n_theta);
        for (std::size_t j = 0; j < n_theta; ++j) {
            kv[j] = k(rule.theta[j]) * rule.weight[j];
            av[j] = d->angular(rule.theta[j]);
        }
        lhs += graded_midpoint(
            [&](double t) {
                const double rad = d->radial(t);
                double acc = 0.0;
                for (std::size_t j = 0; j < n_theta; ++j) acc += kv[j] * clip_value(d->clip, rad * av[j]);
                return f(t) * acc;
            },
            r, 1.0, 1024, 20);
    }
    rep.lhs = lhs;
    rep.rhs = stieltjes(f, counting_function(mu, k), r, 1.0);
    rep.agreed = std::abs(rep.lhs - rep.rhs) <= tol * (1.0 + std::abs(rep.lhs));
    return rep;
}

}  // namespace diskzero
