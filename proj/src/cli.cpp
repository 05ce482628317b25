#include "diskzero/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "diskzero/charge.hpp"
#include "diskzero/errors.hpp"
#include "diskzero/gauge.hpp"
#include "diskzero/json_io.hpp"
#include "diskzero/periodic.hpp"
#include "diskzero/plot.hpp"
#include "diskzero/testfn.hpp"
#include "diskzero/verify.hpp"
#include "diskzero/zeros.hpp"

namespace diskzero {

namespace {

struct Outcome {
    Json report;
    std::string csv;
    int exit_code = kExitOk;
    std::vector<PlotSeries> plot;
    PlotLabels labels;
};

class CsvWriter {
public:
    explicit CsvWriter(std::initializer_list<const char*> header) {
        bool first = true;
        for (const char* h : header) {
            os_ << (first ? "" : ",") << h;
            first = false;
        }
        os_ << '\n';
    }
    template <class... Ts>
    void row(const Ts&... cells) {
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
        os_ << '\n';
    }
    std::string str() const { return os_.str(); }

private:
    static std::string cell(double x) { return format_number(x); }
    static std::string cell(std::size_t x) { return std::to_string(x); }
    static std::string cell(bool b) { return b ? "true" : "false"; }
    static std::string cell(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    static std::string cell(const char* s) { return cell(std::string(s)); }
    std::ostringstream os_;
};

void expect_fields(const Json& j, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional) {
    if (!j.is_object()) throw InputError("input must be a JSON object");
    for (const char* k : required)
        if (!j.contains(k)) throw InputError(std::string("input is missing field \"") + k + "\"");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* a : required) known = known || k == a;
        for (const char* a : optional) known = known || k == a;
        if (!known) throw InputError("input has unknown field \"" + k + "\"");
    }
}

double pick_number(const std::optional<double>& flag, const Json& in, const char* field,
                   std::optional<double> fallback = std::nullopt) {
    if (flag) return *flag;
    if (in.contains(field)) {
        if (!in[field].is_number()) throw InputError(std::string("field \"") + field + "\" must be a number");
        return in[field].get<double>();
    }
    if (fallback) return *fallback;
    throw InputError(std::string("\"") + field + "\" must be given in the input or as a flag");
}

std::size_t pick_count(const std::optional<std::size_t>& flag, const Json& in, const char* field,
                       std::size_t fallback) {
    if (flag) return *flag;
    if (in.contains(field)) {
        if (!in[field].is_number_integer() || in[field].get<long long>() < 0)
            throw InputError(std::string("field \"") + field + "\" must be a nonnegative integer");
        return in[field].get<std::size_t>();
    }
    return fallback;
}

std::optional<double> pick_optional(const std::optional<double>& flag, const Json& in, const char* field) {
    if (flag) return flag;
    if (in.contains(field)) return pick_number(std::nullopt, in, field);
    return std::nullopt;
}

Outcome check_h(const RunConfig& cfg, const Json& in) {
    expect_fields(in, {"h"}, {"rho", "grid", "tol", "random_triples"});
    const auto h = periodic_from_json(in["h"]);
    const double rho = pick_number(cfg.rho, in, "rho");
    const std::size_t grid = pick_count(cfg.grid, in, "grid", 512);
    const auto tol = pick_optional(cfg.tol, in, "tol");
    const std::size_t triples = pick_count(cfg.random_triples, in, "random_triples", 0);

    const auto kernel = check_trig_convex(h, rho, grid, tol);
    const auto second = check_second_derivative(h, rho, grid, tol);
    bool passed = kernel.passed;

    Outcome o;
    const double lo = min_value(h);
    o.report = Json{{"command", "check-h"},
                    {"h", to_json(h)},
                    {"descriptor", h.describe()},
                    {"rho", rho},
                    {"min_value", lo},
                    {"nonnegative", lo >= -kernel.tol},
                    {"sine_kernel", to_json(kernel)},
                    {"second_difference", to_json(second)},
                    {"methods_agree", kernel.passed == second.passed}};
    CsvWriter csv{"method", "rho", "n_grid", "tol", "passed", "max_defect"};
    csv.row(kernel.method, kernel.rho, kernel.n_grid, kernel.tol, kernel.passed, kernel.max_defect);
    csv.row(second.method, second.rho, second.n_grid, second.tol, second.passed, second.max_defect);
    if (triples > 0) {
        const auto rnd = check_trig_convex_random(h, rho, triples, cfg.seed, tol);
        passed = passed && rnd.passed;
        o.report["random"] = to_json(rnd);
        o.report["seed"] = cfg.seed;
        csv.row(rnd.method, rnd.rho, triples, rnd.tol, rnd.passed, rnd.max_defect);
    }
    o.report["passed"] = passed;
    o.csv = csv.str();
    o.exit_code = passed ? kExitOk : kExitPropertyFailure;

    PlotSeries s{h.describe(), {}, {}};
    for (std::size_t j = 0; j <= 720; ++j) {
        const double th = -kPi + kTwoPi * static_cast<double>(j) / 720.0;
        s.x.push_back(th);
        s.y.push_back(h(th));
    }
    o.plot = {s};
    o.labels = {"h on one period", "theta", "h(theta)"};
    return o;
}

Outcome check_g(const RunConfig& cfg, const Json& in) {
    expect_fields(in, {"g"}, {"normalized"});
    const auto g = gauge_from_json(in["g"]);
    bool require_norm = cfg.normalized;
    if (in.contains("normalized")) {
        if (!in["normalized"].is_boolean()) throw InputError("field \"normalized\" must be a boolean");
        require_norm = require_norm || in["normalized"].get<bool>();
    }
    const auto cls = check_gauge_class(g);
    const auto gx = check_gx(g);
    const bool passed = cls.convex_ok && cls.zero_at_zero_ok && (!require_norm || cls.normalized_ok) &&
                        gx.derivative_bound_ok && gx.increasing_ok;

    Outcome o;
    o.report = Json{{"command", "check-g"},  {"g", to_json(g)},  {"descriptor", g.describe()},
                    {"normalization_required", require_norm}, {"class", to_json(cls)}, {"derivative_facts", to_json(gx)},
                    {"passed", passed}};
    CsvWriter csv{"check", "ok", "value"};
    csv.row("convex", cls.convex_ok, cls.max_convexity_violation);
    csv.row("zero_at_zero", cls.zero_at_zero_ok, g(0.0));
    csv.row("normalized", cls.normalized_ok, cls.value_at_one);
    csv.row("derivative_bound", gx.derivative_bound_ok, gx.worst_derivative_gap);
    csv.row("ratio_increasing", gx.increasing_ok, static_cast<double>(gx.n_points));
    o.csv = csv.str();
    o.exit_code = passed ? kExitOk : kExitPropertyFailure;

    PlotSeries s{g.describe(), {}, {}};
    for (std::size_t j = 0; j <= 200; ++j) {
        const double x = 2.0 * static_cast<double>(j) / 200.0;
        s.x.push_back(x);
        s.y.push_back(g(x));
    }
    o.plot = {s};
    o.labels = {"growth gauge", "x", "g(x)"};
    return o;
}

Outcome testfn_audit(const RunConfig& cfg, const Json& in) {
    expect_fields(in, {"gauge", "h"}, {"rho", "nr", "ntheta", "tol"});
    const auto spec = make_test_function(gauge_from_json(in["gauge"]), periodic_from_json(in["h"]),
                                         pick_number(cfg.rho, in, "rho"));
    AuditGrid grid;
    grid.n_r = pick_count(cfg.nr, in, "nr", 256);
    grid.n_theta = pick_count(cfg.ntheta, in, "ntheta", 512);
    const double tol = pick_number(cfg.tol, in, "tol", 1e-6);
    const auto sub = subharmonicity_audit(spec, grid, tol);
    const auto mem = membership_audit(spec);
    const bool passed = sub.lower_bound_ok && sub.pointwise_bound_ok && mem.positive_ok && mem.bounded_ok && mem.boundary_zero_ok;

    Outcome o;
    o.report = Json{{"command", "testfn-audit"},
                    {"spec", Json{{"gauge", to_json(spec.gauge)},
                                  {"h", to_json(spec.h)},
                                  {"rho", spec.rho},
                                  {"r_rho", spec.r_rho},
                                  {"b_rho", spec.b_rho}}},
                    {"subharmonicity", to_json(sub)},
                    {"membership", to_json(mem)},
                    {"passed", passed}};
    CsvWriter csv{"r", "min_laplacian"};
    for (std::size_t i = 0; i < sub.row_radius.size(); ++i) csv.row(sub.row_radius[i], sub.row_min_laplacian[i]);
    o.csv = csv.str();
    o.exit_code = passed ? kExitOk : kExitPropertyFailure;
    o.plot = {{"min over theta", sub.row_radius, sub.row_min_laplacian}};
    o.labels = {"row minima of the polar Laplacian", "r", "min Laplacian"};
    return o;
}

Outcome count(const RunConfig& cfg, const Json& in) {
    expect_fields(in, {}, {"charge", "divisor", "h", "r"});
    if (in.contains("charge") == in.contains("divisor"))
        throw InputError("input needs exactly one of \"charge\" and \"divisor\"");
    const double r = pick_number(cfg.r, in, "r");
    if (!(r >= 0.0 && r < 1.0)) throw InputError("r must lie in [0, 1)");
    const auto h = in.contains("h") ? periodic_from_json(in["h"]) : PeriodicFunction::constant(1.0);

    std::optional<Divisor> divisor;
    DiskCharge mu;
    if (in.contains("divisor")) {
        divisor = divisor_from_json(in["divisor"]);
        mu = atomize(*divisor);
    } else {
        mu = charge_from_json(in["charge"]);
    }
    const auto counting = counting_function(mu, h);

    Outcome o;
    o.report = Json{{"command", "count"}, {"r", r}, {"weight", h.describe()}, {"value", counting.value(r)}};
    if (divisor) {
        o.report["counting_measure"] = counting_measure(*divisor, ClosedDisk{r});
        constexpr std::size_t n_samples = 4096;
        double nearest = 1.0;
        for (const auto& [p, m] : divisor->entries()) nearest = std::min(nearest, std::abs(p.r - r));
        Json winding = nullptr;
        if (r > 0.0 && nearest > kTwoPi * r / static_cast<double>(n_samples)) {
            try {
                const BlaschkeProduct b(*divisor);
                winding = winding_zero_count([&b](std::complex<double> z) { return b(z); }, r, n_samples);
            } catch (const NumericalFailure&) {
            }
        }
        o.report["winding_count"] = winding;
        o.report["blaschke_sum"] = blaschke_condition(*divisor).sum;
    }
    o.csv = counting.to_csv();

    PlotSeries s{"mu_rad(r; " + h.describe() + ")", {}, {}};
    for (std::size_t j = 0; j <= 400; ++j) {
        const double t = 0.99 * static_cast<double>(j) / 400.0;
        s.x.push_back(t);
        s.y.push_back(counting.value(t));
    }
    o.plot = {s};
    o.labels = {"radial counting function", "r", "count"};
    return o;
}

Outcome gap(const RunConfig& cfg, const Json& in) {
    expect_fields(in, {"u", "M", "family"}, {"epsilon", "rescale"});
    std::vector<double> eps;
    if (cfg.epsilon) {
        eps = {*cfg.epsilon};
    } else if (in.contains("epsilon")) {
        const auto& e = in["epsilon"];
        if (e.is_number()) {
            eps = {e.get<double>()};
        } else if (e.is_array() && !e.empty()) {
            for (const auto& x : e) {
                if (!x.is_number()) throw InputError("epsilon entries must be numbers");
                eps.push_back(x.get<double>());
            }
        } else {
            throw InputError("epsilon must be a number or a nonempty array of numbers");
        }
    } else {
        eps = {1e-3};
    }
    for (double e : eps)
        if (!(e > 0.0 && e < 0.5)) throw InputError("epsilon values must lie in (0, 1/2)");
    bool rescale = false;
    if (in.contains("rescale")) {
        if (!in["rescale"].is_boolean()) throw InputError("field \"rescale\" must be a boolean");
        rescale = in["rescale"].get<bool>();
    }
    if (!in["family"].is_array() || in["family"].empty()) throw InputError("family must be a nonempty array");

    std::vector<CheckedWeights> family;
    for (std::size_t i = 0; i < in["family"].size(); ++i) {
        const auto& m = in["family"][i];
        expect_fields(m, {"g", "h", "rho"}, {});
        const auto g = gauge_from_json(m["g"]);
        const auto h = periodic_from_json(m["h"]);
        const double rho = pick_number(std::nullopt, m, "rho");
        try {
            family.push_back(validate_weights(g, h, rho, rescale));
        } catch (const PreconditionError& e) {
            throw PreconditionError("family member " + std::to_string(i) + ": " + e.what(), e.gauge, e.trig, e.h_min,
                                    e.h_max);
        }
    }
    const MSide m_side = m_side_from_json(in["M"]);

    Outcome o;
    Json rows = Json::array();
    Json constants = Json::array();
    CsvWriter csv{"member", "epsilon", "lhs", "rhs_integral", "gap", "g", "h", "rho"};
    std::vector<PlotSeries> series(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) series[i].label = "member " + std::to_string(i);
    for (double e : eps) {
        const USide u = u_side_from_json(in["u"], e);
        const DiskCharge m = std::holds_alternative<DiskCharge>(m_side)
                                 ? std::get<DiskCharge>(m_side)
                                 : atomize(std::get<SequenceGenerator>(m_side).truncate(e));
        const auto c = empirical_constant(u, m, family, e);
        for (std::size_t i = 0; i < c.cells.size(); ++i) {
            const auto& cell = c.cells[i];
            Json row = to_json(cell);
            row["member"] = i;
            rows.push_back(row);
            csv.row(i, cell.epsilon, cell.lhs, cell.rhs_integral, cell.gap, cell.g_descriptor, cell.h_descriptor,
                    cell.rho);
            series[i].x.push_back(-std::log10(e));
            series[i].y.push_back(cell.gap);
        }
        constants.push_back(Json{{"epsilon", e}, {"value", c.value}, {"argmax", c.argmax}});
    }
    o.report = Json{{"command", "gap"}, {"rows", rows}, {"empirical_constant", constants}};
    o.csv = csv.str();
    o.plot = std::move(series);
    o.labels = {"inequality gap per family member", "-log10 eps", "lhs - rhs"};
    return o;
}

Outcome uniqueness(const RunConfig& cfg, const Json& in) {
    expect_fields(in, {"Z", "g", "h"}, {"M", "levels", "window", "tau"});
    const auto z = generator_from_json(in["Z"]);
    const MSide m = in.contains("M") ? m_side_from_json(in["M"]) : MSide{DiskCharge{}};
    const auto g = gauge_from_json(in["g"]);
    const auto h = periodic_from_json(in["h"]);
    UniquenessOptions opts;
    opts.levels = pick_count(cfg.levels, in, "levels", 20);
    opts.window = pick_count(std::nullopt, in, "window", 3);
    opts.tau = pick_number(std::nullopt, in, "tau", 1e-3);
    const auto audit = uniqueness_audit(z, m, g, h, opts);
    const auto bl = blaschke_partials(z, opts.levels);

    Outcome o;
    o.report = Json{{"command", "uniqueness"}};
    const Json audit_json = to_json(audit);
    for (const auto& [k, v] : audit_json.items()) o.report[k] = v;
    o.report["Z"] = to_json(z);
    o.report["g"] = g.describe();
    o.report["h"] = h.describe();
    o.report["window"] = opts.window;
    o.report["tau"] = opts.tau;
    o.report["blaschke_partials"] = bl;
    CsvWriter csv{"level", "epsilon", "zero_sum", "majorant_integral", "blaschke"};
    PlotSeries sz{"zero sum partials", {}, {}}, sm{"majorant integral partials", {}, {}};
    for (std::size_t j = 0; j < audit.epsilons.size(); ++j) {
        csv.row(j + 1, audit.epsilons[j], audit.zero_partials[j], audit.majorant_partials[j], bl[j]);
        const double x = -std::log(audit.epsilons[j]);
        sz.x.push_back(x);
        sz.y.push_back(audit.zero_partials[j]);
        sm.x.push_back(x);
        sm.y.push_back(audit.majorant_partials[j]);
    }
    o.csv = csv.str();
    o.plot = {sz, sm};
    o.labels = {"uniqueness partial sums", "-log eps", "partial"};
    return o;
}

std::function<double(std::complex<double>)> field_from_json(const Json& u) {
    const std::string kind = u.is_object() && u.contains("kind") && u["kind"].is_string() ? u["kind"].get<std::string>()
                                                                                          : "";
    if (kind == "re_power") {
        expect_fields(u, {"kind", "n"}, {"coef"});
        if (!u["n"].is_number_integer() || u["n"].get<long long>() < 0 || u["n"].get<long long>() > 64)
            throw InputError("re_power needs an integer n in [0, 64]");
        const int n = u["n"].get<int>();
        const double coef = pick_number(std::nullopt, u, "coef", 1.0);
        return [n, coef](std::complex<double> z) { return coef * std::pow(z, n).real(); };
    }
    if (kind == "abs_power") {
        expect_fields(u, {"kind", "p"}, {"coef"});
        const double p = pick_number(std::nullopt, u, "p");
        const double coef = pick_number(std::nullopt, u, "coef", 1.0);
        return [p, coef](std::complex<double> z) { return coef * std::pow(std::abs(z), p); };
    }
    throw InputError("u must be {\"kind\": \"re_power\" | \"abs_power\", ...}");
}

Outcome indicator(const RunConfig& cfg, const Json& in) {
    expect_fields(in, {}, {"u", "samples", "radii", "n_theta", "rho"});
    const double rho = pick_number(cfg.rho, in, "rho");
    if (!(rho > 0.0)) throw InputError("rho must be positive");
    RadialSamples samples;
    if (in.contains("samples") == in.contains("u"))
        throw InputError("input needs exactly one of \"u\" and \"samples\"");
    if (in.contains("u")) {
        if (!in.contains("radii")) throw InputError("input with \"u\" needs \"radii\"");
        std::vector<double> radii;
        if (!in["radii"].is_array()) throw InputError("radii must be an array of numbers");
        for (const auto& x : in["radii"]) {
            if (!x.is_number()) throw InputError("radii must be an array of numbers");
            radii.push_back(x.get<double>());
        }
        samples = sample_radial(field_from_json(in["u"]), std::move(radii), pick_count(std::nullopt, in, "n_theta", 256));
    } else {
        const auto& s = in["samples"];
        expect_fields(s, {"radii", "values"}, {});
        if (!s["radii"].is_array() || !s["values"].is_array() || s["values"].size() != s["radii"].size())
            throw InputError("samples need radii and one value row per radius");
        for (const auto& x : s["radii"]) {
            if (!x.is_number()) throw InputError("radii must be numbers");
            samples.radii.push_back(x.get<double>());
        }
        for (const auto& row : s["values"]) {
            if (!row.is_array()) throw InputError("sample value rows must be arrays");
            std::vector<double> v;
            for (const auto& x : row) {
                if (!x.is_number()) throw InputError("sample values must be numbers");
                v.push_back(x.get<double>());
            }
            if (!samples.values.empty() && v.size() != samples.values.front().size())
                throw InputError("sample value rows must share one length");
            samples.values.push_back(std::move(v));
        }
        const std::size_t n = samples.values.empty() ? 0 : samples.values.front().size();
        for (std::size_t i = 0; i < n; ++i)
            samples.angles.push_back(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
    }
    const auto h = rho_indicator_estimate(samples, rho);
    const auto check = check_trig_convex(h, rho);

    Outcome o;
    const auto values = grid_values(h, samples.angles.size());
    o.report = Json{{"command", "indicator"}, {"rho", rho},           {"radii", samples.radii},
                    {"n_theta", samples.angles.size()}, {"values", values}, {"check", to_json(check)},
                    {"passed", check.passed}};
    CsvWriter csv{"theta", "h"};
    for (std::size_t i = 0; i < values.size(); ++i) csv.row(samples.angles[i], values[i]);
    o.csv = csv.str();
    o.exit_code = check.passed ? kExitOk : kExitPropertyFailure;
    o.plot = {{"indicator estimate", samples.angles, values}};
    o.labels = {"rho-indicator estimate", "theta", "h(theta)"};
    return o;
}

Json read_input(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot read input file: " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("input is not valid JSON: ") + e.what());
    }
}

void emit_error(std::ostream& err, const char* code, const std::string& message, Json extra = nullptr) {
    Json e{{"code", code}, {"message", message}};
    if (!extra.is_null())
        for (const auto& [k, v] : extra.items()) e[k] = v;
    err << dump_json(Json{{"error", e}}) << '\n';
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.input_path.empty()) throw InputError("an input file is required");
        const Json in = read_input(cfg.input_path);
        Outcome o;
        if (cfg.command == "check-h")
            o = check_h(cfg, in);
        else if (cfg.command == "check-g")
            o = check_g(cfg, in);
        else if (cfg.command == "testfn-audit")
            o = testfn_audit(cfg, in);
        else if (cfg.command == "count")
            o = count(cfg, in);
        else if (cfg.command == "gap")
            o = gap(cfg, in);
        else if (cfg.command == "uniqueness")
            o = uniqueness(cfg, in);
        else if (cfg.command == "indicator")
            o = indicator(cfg, in);
        else
            throw InputError("unknown command \"" + cfg.command + "\"");

        const std::string body = cfg.format == OutputFormat::csv ? o.csv : dump_json(o.report) + "\n";
        if (cfg.output_path.empty()) {
            out << body;
        } else {
            std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
            if (!f) throw InputError("cannot open output path for writing: " + cfg.output_path);
            f << body;
            if (!f.flush()) throw InputError("failed writing output to " + cfg.output_path);
        }
        if (cfg.plot_path) render_plot(o.plot, *cfg.plot_path, o.labels);
        return o.exit_code;
    } catch (const PreconditionError& e) {
        emit_error(err, "precondition_failed", e.what(),
                   Json{{"gauge", to_json(e.gauge)}, {"trig", to_json(e.trig)}, {"h_min", e.h_min},
                        {"h_max", e.h_max}});
        return kExitPropertyFailure;
    } catch (const NumericalFailure& e) {
        emit_error(err, "numerical_failure", e.what());
        return kExitPropertyFailure;
    } catch (const InputError& e) {
        emit_error(err, "input_error", e.what());
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        emit_error(err, "input_error", e.what());
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        emit_error(err, "input_error", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        emit_error(err, "internal_error", e.what());
        return kExitPropertyFailure;
    }
}

}  // namespace diskzero
