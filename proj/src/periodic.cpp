#include "diskzero/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "diskzero/errors.hpp"
#include "diskzero/parallel.hpp"

namespace diskzero {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

Sampled make_sampled(std::vector<double> values, Interpolation interpolation) {
    const std::size_t n = values.size();
    if (n < 16 || n % 2 != 0) throw std::invalid_argument("sampled function needs an even sample count >= 16");
    for (double v : values) require_finite(v, "sample value");

    Sampled s{std::move(values), interpolation, {}, {}};
    if (interpolation == Interpolation::trigonometric) {
        std::vector<double> cos_tab(n), sin_tab(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double a = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
            cos_tab[m] = std::cos(a);
            sin_tab[m] = std::sin(a);
        }
        const std::size_t half = n / 2;
        s.cos_coeffs.assign(half + 1, 0.0);
        s.sin_coeffs.assign(half + 1, 0.0);
        for (std::size_t k = 0; k <= half; ++k) {
            double a = 0.0, b = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t m = (j * k) % n;
                a += s.values[j] * cos_tab[m];
                b += s.values[j] * sin_tab[m];
            }
            s.cos_coeffs[k] = 2.0 * a / static_cast<double>(n);
            s.sin_coeffs[k] = 2.0 * b / static_cast<double>(n);
        }
    }
    return s;
}

double eval_sampled(const Sampled& s, double theta) {
    const std::size_t n = s.values.size();
    double t = theta < 0.0 ? theta + kTwoPi : theta;  // [0, 2pi)
    const double pos = t * static_cast<double>(n) / kTwoPi;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) return s.values[static_cast<std::size_t>(nearest) % n];

    if (s.interpolation == Interpolation::piecewise_linear) {
        const double fl = std::floor(pos);
        const double frac = pos - fl;
        const std::size_t j = static_cast<std::size_t>(fl) % n;
        return s.values[j] * (1.0 - frac) + s.values[(j + 1) % n] * frac;
    }

    const std::size_t half = n / 2;
    const double c1 = std::cos(t), s1 = std::sin(t);
    double ck = 1.0, sk = 0.0;
    double acc = 0.5 * s.cos_coeffs[0];
    for (std::size_t k = 1; k < half; ++k) {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
        acc += s.cos_coeffs[k] * ck + s.sin_coeffs[k] * sk;
    }
    acc += 0.5 * s.cos_coeffs[half] * std::cos(static_cast<double>(half) * t);
    return acc;
}

double eval_node(const PeriodicNode& node, double theta);

double eval_node(const PeriodicNode& node, double theta) {
    return std::visit(
        overloaded{
            [&](const TruncatedCosine& c) {
                if (c.rho == 0.0) return 1.0;
                return std::abs(theta) < kPi / (2.0 * c.rho) ? std::cos(c.rho * theta) : 0.0;
            },
            [&](const Constant& c) { return c.c; },
            [&](const SupportFunction& s) {
                const double ct = std::cos(theta), st = std::sin(theta);
                double best = -std::numeric_limits<double>::infinity();
                for (const auto& p : s.points) best = std::max(best, p.real() * ct + p.imag() * st);
                return best;
            },
            [&](const Sampled& s) { return eval_sampled(s, theta); },
            [&](const PositivePart& p) { return std::max(0.0, eval_node(p.inner.node(), theta)); },
            [&](const NegativePart& p) { return std::max(0.0, -eval_node(p.inner.node(), theta)); },
            [&](const Scaled& s) { return s.c * eval_node(s.inner.node(), theta); },
            [&](const Sum& s) { return eval_node(s.left.node(), theta) + eval_node(s.right.node(), theta); },
        },
        static_cast<const PeriodicNode::variant&>(node));
}

void check_grid_args(std::size_t n_grid, double tol) {
    if (n_grid < 16) throw std::invalid_argument("n_grid must be at least 16");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

void check_rho(double rho) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be finite and >= 0");
}

constexpr std::size_t kMaxWitnesses = 8;

bool witness_before(const TrigWitness& a, const TrigWitness& b) {
    if (a.defect != b.defect) return a.defect > b.defect;
    if (a.theta1 != b.theta1) return a.theta1 < b.theta1;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.theta2 < b.theta2;
}

void keep_top(std::vector<TrigWitness>& w) {
    std::sort(w.begin(), w.end(), witness_before);
    if (w.size() > kMaxWitnesses) w.resize(kMaxWitnesses);
}

void collect_sign_changes(const PeriodicFunction& inner, std::vector<double>& out) {
    constexpr std::size_t m = 8192;
    std::vector<double> v(m + 1);
    for (std::size_t i = 0; i <= m; ++i) v[i] = inner(-kPi + kTwoPi * static_cast<double>(i) / m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool pa = v[i] > 0.0, pb = v[i + 1] > 0.0;
        if (pa == pb) continue;
        double lo = -kPi + kTwoPi * static_cast<double>(i) / m;
        double hi = -kPi + kTwoPi * static_cast<double>(i + 1) / m;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((inner(mid) > 0.0) == pa)
                lo = mid;
            else
                hi = mid;
        }
        out.push_back(normalize_angle(0.5 * (lo + hi)));
    }
}

void collect_kinks(const PeriodicFunction& h, std::vector<double>& out) {
    std::visit(overloaded{
                   [&](const TruncatedCosine& c) {
                       if (c.rho == 0.0) return;
                       const double edge = kPi / (2.0 * c.rho);
                       if (edge < kPi) {
                           out.push_back(edge);
                           out.push_back(-edge);
                       } else {
                           out.push_back(kPi);
                       }
                   },
                   [&](const Constant&) {},
                   [&](const SupportFunction& s) {
                       const auto& pts = s.points;
                       for (std::size_t a = 0; a < pts.size(); ++a)
                           for (std::size_t b = a + 1; b < pts.size(); ++b) {
                               const auto d = pts[a] - pts[b];
                               if (std::abs(d) == 0.0) continue;
                               for (double sgn : {-1.0, 1.0}) {
                                   const double th = normalize_angle(std::arg(d) + sgn * kPi / 2.0);
                                   const double tie = pts[a].real() * std::cos(th) + pts[a].imag() * std::sin(th);
                                   if (std::abs(h(th) - tie) <= 1e-12 * (1.0 + std::abs(tie))) out.push_back(th);
                               }
                           }
                   },
                   [&](const Sampled& s) {
                       if (s.interpolation != Interpolation::piecewise_linear) return;
                       const std::size_t n = s.values.size();
                       for (std::size_t j = 0; j < n; ++j)
                           out.push_back(normalize_angle(kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
                   },
                   [&](const PositivePart& p) {
                       collect_kinks(p.inner, out);
                       collect_sign_changes(p.inner, out);
                   },
                   [&](const NegativePart& p) {
                       collect_kinks(p.inner, out);
                       collect_sign_changes(p.inner, out);
                   },
                   [&](const Scaled& s) {
                       if (s.c != 0.0) collect_kinks(s.inner, out);
                   },
                   [&](const Sum& s) {
                       collect_kinks(s.left, out);
                       collect_kinks(s.right, out);
                   },
               },
               static_cast<const PeriodicNode::variant&>(h.node()));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double normalize_angle(double theta) {
    double r = std::remainder(theta, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

PeriodicFunction PeriodicFunction::truncated_cosine(double rho) {
    check_rho(rho);
    return PeriodicFunction(std::make_shared<const PeriodicNode>(TruncatedCosine{rho}));
}

PeriodicFunction PeriodicFunction::constant(double c) {
    require_finite(c, "constant");
    return PeriodicFunction(std::make_shared<const PeriodicNode>(Constant{c}));
}

PeriodicFunction PeriodicFunction::support(std::vector<std::complex<double>> points) {
    if (points.empty()) throw std::invalid_argument("support function needs at least one point");
    for (const auto& p : points) {
        require_finite(p.real(), "support point");
        require_finite(p.imag(), "support point");
    }
    return PeriodicFunction(std::make_shared<const PeriodicNode>(SupportFunction{std::move(points)}));
}

PeriodicFunction PeriodicFunction::sampled(std::vector<double> values, Interpolation interpolation) {
    return PeriodicFunction(std::make_shared<const PeriodicNode>(make_sampled(std::move(values), interpolation)));
}

PeriodicFunction PeriodicFunction::sampled_from(const std::function<double(double)>& fn, std::size_t n,
                                                Interpolation interpolation) {
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) values[j] = fn(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    return sampled(std::move(values), interpolation);
}

PeriodicFunction PeriodicFunction::positive_part(PeriodicFunction inner) {
    return PeriodicFunction(std::make_shared<const PeriodicNode>(PositivePart{std::move(inner)}));
}

PeriodicFunction PeriodicFunction::negative_part(PeriodicFunction inner) {
    return PeriodicFunction(std::make_shared<const PeriodicNode>(NegativePart{std::move(inner)}));
}

PeriodicFunction PeriodicFunction::scaled(double c, PeriodicFunction inner) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("scale factor must be finite and >= 0");
    return PeriodicFunction(std::make_shared<const PeriodicNode>(Scaled{c, std::move(inner)}));
}

PeriodicFunction PeriodicFunction::sum(PeriodicFunction left, PeriodicFunction right) {
    return PeriodicFunction(std::make_shared<const PeriodicNode>(Sum{std::move(left), std::move(right)}));
}

double PeriodicFunction::operator()(double theta) const { return eval_node(*node_, normalize_angle(theta)); }

bool PeriodicFunction::closed_form() const {
    return std::visit(overloaded{
                          [](const Sampled&) { return false; },
                          [](const PositivePart& p) { return p.inner.closed_form(); },
                          [](const NegativePart& p) { return p.inner.closed_form(); },
                          [](const Scaled& s) { return s.inner.closed_form(); },
                          [](const Sum& s) { return s.left.closed_form() && s.right.closed_form(); },
                          [](const auto&) { return true; },
                      },
                      static_cast<const PeriodicNode::variant&>(*node_));
}

std::string PeriodicFunction::describe() const {
    return std::visit(
        overloaded{
            [](const TruncatedCosine& c) { return "truncated_cosine(" + fmt_number(c.rho) + ")"; },
            [](const Constant& c) { return "constant(" + fmt_number(c.c) + ")"; },
            [](const SupportFunction& s) { return "support[" + std::to_string(s.points.size()) + "]"; },
            [](const Sampled& s) {
                return "samples[" + std::to_string(s.values.size()) + "," +
                       (s.interpolation == Interpolation::trigonometric ? "trig" : "linear") + "]";
            },
            [](const PositivePart& p) { return "pos(" + p.inner.describe() + ")"; },
            [](const NegativePart& p) { return "neg(" + p.inner.describe() + ")"; },
            [](const Scaled& s) { return fmt_number(s.c) + "*" + s.inner.describe(); },
            [](const Sum& s) { return "(" + s.left.describe() + " + " + s.right.describe() + ")"; },
        },
        static_cast<const PeriodicNode::variant&>(*node_));
}

std::vector<double> grid_values(const PeriodicFunction& h, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = h(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    return v;
}

double max_value(const PeriodicFunction& h, std::size_t n) {
    if (const auto* s = std::get_if<SupportFunction>(&h.node())) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& p : s->points) best = std::max(best, std::abs(p));
        return best;
    }
    const auto v = grid_values(h, n);
    double best = *std::max_element(v.begin(), v.end());
    if (const auto* smp = std::get_if<Sampled>(&h.node()))
        best = std::max(best, *std::max_element(smp->values.begin(), smp->values.end()));
    return best;
}

double min_value(const PeriodicFunction& h, std::size_t n) {
    const auto v = grid_values(h, n);
    return *std::min_element(v.begin(), v.end());
}

double max_adjacent_jump(const PeriodicFunction& h, std::size_t n) {
    const auto v = grid_values(h, n);
    double jump = 0.0;
    for (std::size_t j = 0; j < n; ++j) jump = std::max(jump, std::abs(v[(j + 1) % n] - v[j]));
    return jump;
}

std::vector<double> kink_angles(const PeriodicFunction& h) {
    std::vector<double> out;
    collect_kinks(h, out);
    std::sort(out.begin(), out.end());
    std::vector<double> unique;
    for (double a : out)
        if (unique.empty() || a - unique.back() > 1e-12) unique.push_back(a);
    if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= 1e-12) unique.erase(unique.begin());
    return unique;
}

double default_tolerance(const PeriodicFunction& h) {
    if (h.closed_form()) return 1e-9;
    const auto v = grid_values(h, 4096);
    double amp = 0.0;
    for (double x : v) amp = std::max(amp, std::abs(x));
    return 1e-6 * (1.0 + amp);
}

TrigConvexityReport check_trig_convex(const PeriodicFunction& h, double rho, std::size_t n_grid,
                                      std::optional<double> tol_opt) {
    check_rho(rho);
    const double tol = tol_opt.value_or(default_tolerance(h));
    check_grid_args(n_grid, tol);

    TrigConvexityReport report;
    report.method = "sine_kernel";
    report.rho = rho;
    report.n_grid = n_grid;
    report.tol = tol;

    const auto v = grid_values(h, n_grid);
    const double step = kTwoPi / static_cast<double>(n_grid);

    if (rho == 0.0) {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        report.max_defect = *hi - *lo;
        report.passed = report.max_defect <= tol;
        return report;
    }

    const double cap = kPi / rho - kPi / (rho * static_cast<double>(n_grid));
    auto d_max = static_cast<std::size_t>(std::floor(cap / step));
    while (d_max > 0 && static_cast<double>(d_max) * step > cap) --d_max;

    std::vector<double> sines(d_max + 1);
    for (std::size_t k = 0; k <= d_max; ++k) sines[k] = std::sin(rho * static_cast<double>(k) * step);

    const std::size_t interior_cap = std::max<std::size_t>(2, n_grid / 8);
    const std::size_t workers = worker_count();
    std::vector<double> chunk_max(workers, -std::numeric_limits<double>::infinity());
    std::vector<std::vector<TrigWitness>> chunk_witness(workers);

    // Two periods back to back so that i + d never wraps.
    std::vector<double> vv(2 * n_grid);
    for (std::size_t k = 0; k < vv.size(); ++k) vv[k] = v[k % n_grid];

    parallel_chunks(n_grid, workers, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        double local_max = -std::numeric_limits<double>::infinity();
        auto& local_w = chunk_witness[chunk];
        double witness_floor = -std::numeric_limits<double>::infinity();
        // Interior offsets j in (0, d): all of them, or interior_cap evenly spread ones
        // 1 + floor(m (d - 2) / (interior_cap - 1)) stepped without division.
        const auto for_interior = [&](std::size_t d, auto&& fn) {
            if (d - 1 <= interior_cap) {
                for (std::size_t j = 1; j < d; ++j) fn(j);
                return;
            }
            const std::size_t den = interior_cap - 1;
            const std::size_t q = (d - 2) / den, r = (d - 2) % den;
            std::size_t j = 1, carry = 0;
            for (std::size_t m = 0; m < interior_cap; ++m) {
                fn(j);
                j += q;
                carry += r;
                if (carry >= den) {
                    carry -= den;
                    ++j;
                }
            }
        };
        for (std::size_t i = begin; i < end; ++i) {
            const double* row = vv.data() + i;
            const double v1 = row[0];
            for (std::size_t d = 2; d <= d_max; ++d) {
                const double inv = 1.0 / sines[d];
                const double a = v1 * inv, b = row[d] * inv;
                const auto defect_at = [&](std::size_t j) { return row[j] - (sines[d - j] * a + sines[j] * b); };
                double block = -std::numeric_limits<double>::infinity();
                for_interior(d, [&](std::size_t j) { block = std::max(block, defect_at(j)); });
                local_max = std::max(local_max, block);
                if (block <= tol || block < witness_floor) continue;
                const double t1 = normalize_angle(static_cast<double>(i) * step);
                for_interior(d, [&](std::size_t j) {
                    const double defect = defect_at(j);
                    if (defect > tol && defect >= witness_floor)
                        local_w.push_back(
                            {t1, t1 + static_cast<double>(j) * step, t1 + static_cast<double>(d) * step, defect});
                });
                if (local_w.size() > 4 * kMaxWitnesses) {
                    keep_top(local_w);
                    witness_floor = local_w.back().defect;  // ties are kept so the result is chunking-independent
                }
            }
        }
        chunk_max[chunk] = local_max;
    });

    double max_defect = -std::numeric_limits<double>::infinity();
    for (double m : chunk_max) max_defect = std::max(max_defect, m);
    if (!std::isfinite(max_defect)) max_defect = 0.0;  // no admissible triple on this mesh
    for (auto& w : chunk_witness) report.witnesses.insert(report.witnesses.end(), w.begin(), w.end());
    keep_top(report.witnesses);

    report.max_defect = max_defect;
    report.passed = max_defect <= tol;
    return report;
}

TrigConvexityReport check_trig_convex_random(const PeriodicFunction& h, double rho, std::size_t n_triples,
                                             std::uint64_t seed, std::optional<double> tol_opt) {
    check_rho(rho);
    const double tol = tol_opt.value_or(default_tolerance(h));
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (n_triples == 0) throw std::invalid_argument("n_triples must be positive");

    TrigConvexityReport report;
    report.method = "sine_kernel_random";
    report.rho = rho;
    report.n_grid = n_triples;
    report.tol = tol;

    std::mt19937_64 rng(seed);
    if (rho == 0.0) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t k = 0; k < n_triples; ++k) {
            const double x = h(-kPi + kTwoPi * uniform01(rng));
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        report.max_defect = hi - lo;
        report.passed = report.max_defect <= tol;
        return report;
    }

    const double span_cap = kPi / rho * (1.0 - 1e-6);
    double max_defect = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_triples; ++k) {
        const double t1 = -kPi + kTwoPi * uniform01(rng);
        const double span = span_cap * (0.5 * uniform01(rng) + 0.5 * uniform01(rng)) + 1e-9;
        const double frac = uniform01(rng);
        if (frac == 0.0) continue;
        const double t = t1 + frac * span;
        const double t2 = t1 + span;
        const double denom = std::sin(rho * span);
        const double rhs = (std::sin(rho * (t2 - t)) * h(t1) + std::sin(rho * (t - t1)) * h(t2)) / denom;
        const double defect = h(t) - rhs;
        max_defect = std::max(max_defect, defect);
        if (defect > tol) {
            report.witnesses.push_back({t1, t, t2, defect});
            if (report.witnesses.size() > 4 * kMaxWitnesses) keep_top(report.witnesses);
        }
    }
    keep_top(report.witnesses);
    report.max_defect = std::isfinite(max_defect) ? max_defect : 0.0;
    report.passed = report.max_defect <= tol;
    return report;
}

TrigConvexityReport check_second_derivative(const PeriodicFunction& h, double rho, std::size_t n_grid,
                                            std::optional<double> tol_opt) {
    check_rho(rho);
    const double tol = tol_opt.value_or(default_tolerance(h));
    check_grid_args(n_grid, tol);

    TrigConvexityReport report;
    report.method = "second_difference";
    report.rho = rho;
    report.n_grid = n_grid;
    report.tol = tol;

    const auto v = grid_values(h, n_grid);
    const double step = kTwoPi / static_cast<double>(n_grid);
    const double symbol = std::pow(2.0 * std::sin(0.5 * rho * step) / step, 2);

    double max_defect = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_grid; ++j) {
        const double prev = v[(j + n_grid - 1) % n_grid];
        const double next = v[(j + 1) % n_grid];
        const double second = (next - 2.0 * v[j] + prev) / (step * step);
        const double defect = -(second + symbol * v[j]);
        max_defect = std::max(max_defect, defect);
        if (defect > tol) {
            const double t = normalize_angle(static_cast<double>(j) * step);
            report.witnesses.push_back({t - step, t, t + step, defect});
            if (report.witnesses.size() > 4 * kMaxWitnesses) keep_top(report.witnesses);
        }
    }
    keep_top(report.witnesses);
    report.max_defect = max_defect;
    report.passed = max_defect <= tol;
    return report;
}

RadialSamples sample_radial(const std::function<double(std::complex<double>)>& u, std::vector<double> radii,
                            std::size_t n_theta) {
    RadialSamples s;
    s.radii = std::move(radii);
    s.angles.resize(n_theta);
    for (std::size_t i = 0; i < n_theta; ++i)
        s.angles[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n_theta);
    s.values.reserve(s.radii.size());
    for (double r : s.radii) {
        std::vector<double> row(n_theta);
        for (std::size_t i = 0; i < n_theta; ++i) row[i] = u(std::polar(r, s.angles[i]));
        s.values.push_back(std::move(row));
    }
    return s;
}

PeriodicFunction rho_indicator_estimate(const RadialSamples& samples, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    const auto& radii = samples.radii;
    if (radii.size() < 3) throw std::invalid_argument("indicator estimate needs at least 3 radii");
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (!(radii[j] > 0.0)) throw std::invalid_argument("radii must be positive");
        if (j > 0 && !(radii[j] > radii[j - 1])) throw std::invalid_argument("radii must be strictly increasing");
    }
    const std::size_t n = samples.angles.size();
    if (n < 16 || n % 2 != 0) throw std::invalid_argument("angle grid needs an even count >= 16");
    for (std::size_t i = 0; i < n; ++i) {
        const double expected = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        if (std::abs(samples.angles[i] - expected) > 1e-9) throw std::invalid_argument("angle grid is not uniform");
    }
    if (samples.values.size() != radii.size()) throw std::invalid_argument("values must have one row per radius");
    for (const auto& row : samples.values)
        if (row.size() != n) throw std::invalid_argument("values rows must match the angle grid");

    std::vector<double> h(n, -std::numeric_limits<double>::infinity());
    for (std::size_t j = radii.size() / 2; j < radii.size(); ++j) {
        const double scale = std::pow(radii[j], rho);
        for (std::size_t i = 0; i < n; ++i) h[i] = std::max(h[i], samples.values[j][i] / scale);
    }
    return PeriodicFunction::sampled(std::move(h));
}

double min_rho(const PeriodicFunction& h, double tol, std::size_t n_grid) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    constexpr double rho_max = 64.0;
    const double check_tol = default_tolerance(h);
    const auto v = grid_values(h, n_grid);
    if (*std::min_element(v.begin(), v.end()) < -check_tol)
        throw std::invalid_argument("min_rho requires h >= 0 on the grid");

    if (check_trig_convex(h, 0.0, n_grid, check_tol).passed) return 0.0;
    if (!check_trig_convex(h, rho_max, n_grid, check_tol).passed)
        throw NumericalFailure("not trig-convex below rho_max = 64");

    double lo = 0.0, hi = rho_max;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (check_trig_convex(h, mid, n_grid, check_tol).passed)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace diskzero
