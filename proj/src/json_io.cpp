#include "diskzero/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <set>

namespace diskzero {

namespace {

void expect_object(const Json& j, const char* what) {
    if (!j.is_object()) throw InputError(std::string(what) + " must be a JSON object");
}

// Rejects keys outside required + optional and missing required keys.
void expect_keys(const Json& j, const char* what, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
    expect_object(j, what);
    std::set<std::string> allowed;
    for (const char* k : required) {
        allowed.insert(k);
        if (!j.contains(k)) throw InputError(std::string(what) + ": missing field \"" + k + "\"");
    }
    for (const char* k : optional) allowed.insert(k);
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw InputError(std::string(what) + ": unknown field \"" + k + "\"");
}

double number(const Json& j, const char* field) {
    const Json& v = j.at(field);
    if (!v.is_number()) throw InputError(std::string("field \"") + field + "\" must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string("field \"") + field + "\" must be finite");
    return x;
}

double as_number(const Json& v, const char* what) {
    if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
    return v.get<double>();
}

std::vector<double> number_array(const Json& v, const char* what) {
    if (!v.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(as_number(x, what));
    return out;
}

std::string kind_of(const Json& j, const char* what) {
    expect_object(j, what);
    if (!j.contains("kind") || !j["kind"].is_string())
        throw InputError(std::string(what) + ": missing string field \"kind\"");
    return j["kind"].get<std::string>();
}

// Runs a constructor and reports domain errors as input errors.
template <class F>
auto build(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Json witness_json(const TrigWitness& w) {
    return Json{{"theta1", w.theta1}, {"theta", w.theta}, {"theta2", w.theta2}, {"defect", w.defect}};
}

Json radial_to_json(const RadialProfile& p) {
    return std::visit(
        [](const auto& k) -> Json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RadialProfile::Samples>)
                return Json{{"kind", "samples"}, {"t", k.t}, {"values", k.values}};
            else if constexpr (std::is_same_v<T, RadialProfile::BoundaryPower>)
                return Json{{"kind", "boundary_power"}, {"coef", k.coef}, {"exponent", k.exponent}};
            else
                return Json{{"kind", "uniform"}, {"value", k.value}};
        },
        p.kind());
}

RadialProfile radial_from_json(const Json& j) {
    const std::string kind = j.is_object() && !j.contains("kind") ? "samples" : kind_of(j, "radial profile");
    if (kind == "samples") {
        expect_keys(j, "radial samples", {"t", "values"}, {"kind"});
        return build([&] {
            return RadialProfile::samples(number_array(j["t"], "radial t"), number_array(j["values"], "radial values"));
        });
    }
    if (kind == "boundary_power") {
        expect_keys(j, "boundary_power profile", {"kind", "coef", "exponent"});
        return build([&] { return RadialProfile::boundary_power(number(j, "coef"), number(j, "exponent")); });
    }
    if (kind == "uniform") {
        expect_keys(j, "uniform profile", {"kind", "value"});
        return build([&] { return RadialProfile::uniform(number(j, "value")); });
    }
    throw InputError("unknown radial profile kind \"" + kind + "\"");
}

const char* clip_name(SignClip c) {
    switch (c) {
        case SignClip::positive:
            return "positive";
        case SignClip::negative:
            return "negative";
        case SignClip::none:
            break;
    }
    return "none";
}

void dump_into(std::string& out, const Json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(k).dump();
                out += indent < 0 ? ":" : ": ";
                dump_into(out, v, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            const bool flat = std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += flat && indent >= 0 ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                dump_into(out, v, indent, depth + 1);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    // Keep a float marker so integral doubles re-read as floats.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string dump_json(const Json& j, int indent) {
    std::string out;
    dump_into(out, j, indent, 0);
    return out;
}

PeriodicFunction periodic_from_json(const Json& j) {
    const std::string kind = kind_of(j, "periodic function");
    if (kind == "truncated_cosine") {
        expect_keys(j, "truncated_cosine", {"kind", "rho"});
        return build([&] { return PeriodicFunction::truncated_cosine(number(j, "rho")); });
    }
    if (kind == "constant") {
        expect_keys(j, "constant", {"kind", "c"});
        return build([&] { return PeriodicFunction::constant(number(j, "c")); });
    }
    if (kind == "support") {
        expect_keys(j, "support", {"kind", "points"});
        if (!j["points"].is_array()) throw InputError("support points must be an array of [re, im] pairs");
        std::vector<std::complex<double>> pts;
        for (const auto& p : j["points"]) {
            if (!p.is_array() || p.size() != 2) throw InputError("support points must be [re, im] pairs");
            pts.emplace_back(as_number(p[0], "support point"), as_number(p[1], "support point"));
        }
        return build([&] { return PeriodicFunction::support(std::move(pts)); });
    }
    if (kind == "samples") {
        expect_keys(j, "samples", {"kind", "values"}, {"interpolation"});
        Interpolation mode = Interpolation::trigonometric;
        if (j.contains("interpolation")) {
            const auto& m = j["interpolation"];
            if (m == "trigonometric")
                mode = Interpolation::trigonometric;
            else if (m == "piecewise_linear")
                mode = Interpolation::piecewise_linear;
            else
                throw InputError("interpolation must be \"trigonometric\" or \"piecewise_linear\"");
        }
        return build([&] { return PeriodicFunction::sampled(number_array(j["values"], "sample values"), mode); });
    }
    if (kind == "positive_part" || kind == "negative_part") {
        expect_keys(j, kind.c_str(), {"kind", "inner"});
        auto inner = periodic_from_json(j["inner"]);
        return kind == "positive_part" ? PeriodicFunction::positive_part(std::move(inner))
                                       : PeriodicFunction::negative_part(std::move(inner));
    }
    if (kind == "scaled") {
        expect_keys(j, "scaled", {"kind", "c", "inner"});
        auto inner = periodic_from_json(j["inner"]);
        return build([&] { return PeriodicFunction::scaled(number(j, "c"), std::move(inner)); });
    }
    if (kind == "sum") {
        expect_keys(j, "sum", {"kind", "terms"});
        const auto& terms = j["terms"];
        if (!terms.is_array() || terms.size() < 2) throw InputError("sum needs an array of at least two terms");
        PeriodicFunction acc = periodic_from_json(terms[0]);
        for (std::size_t i = 1; i < terms.size(); ++i)
            acc = PeriodicFunction::sum(std::move(acc), periodic_from_json(terms[i]));
        return acc;
    }
    throw InputError("unknown periodic function kind \"" + kind + "\"");
}

Json to_json(const PeriodicFunction& h) {
    return std::visit(
        [](const auto& n) -> Json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TruncatedCosine>) {
                return Json{{"kind", "truncated_cosine"}, {"rho", n.rho}};
            } else if constexpr (std::is_same_v<T, Constant>) {
                return Json{{"kind", "constant"}, {"c", n.c}};
            } else if constexpr (std::is_same_v<T, SupportFunction>) {
                Json pts = Json::array();
                for (const auto& p : n.points) pts.push_back(Json::array({p.real(), p.imag()}));
                return Json{{"kind", "support"}, {"points", pts}};
            } else if constexpr (std::is_same_v<T, Sampled>) {
                return Json{{"kind", "samples"},
                            {"values", n.values},
                            {"interpolation", n.interpolation == Interpolation::trigonometric ? "trigonometric"
                                                                                              : "piecewise_linear"}};
            } else if constexpr (std::is_same_v<T, PositivePart>) {
                return Json{{"kind", "positive_part"}, {"inner", to_json(n.inner)}};
            } else if constexpr (std::is_same_v<T, NegativePart>) {
                return Json{{"kind", "negative_part"}, {"inner", to_json(n.inner)}};
            } else if constexpr (std::is_same_v<T, Scaled>) {
                return Json{{"kind", "scaled"}, {"c", n.c}, {"inner", to_json(n.inner)}};
            } else {
                return Json{{"kind", "sum"}, {"terms", Json::array({to_json(n.left), to_json(n.right)})}};
            }
        },
        static_cast<const PeriodicNode::variant&>(h.node()));
}

GrowthGauge gauge_from_json(const Json& j) {
    const std::string kind = kind_of(j, "gauge");
    if (kind == "power") {
        expect_keys(j, "power gauge", {"kind", "p"});
        return build([&] { return GrowthGauge::power(number(j, "p")); });
    }
    if (kind == "linear") {
        expect_keys(j, "linear gauge", {"kind", "slope"});
        return build([&] { return GrowthGauge::linear(number(j, "slope")); });
    }
    if (kind == "piecewise") {
        expect_keys(j, "piecewise gauge", {"kind", "points"});
        if (!j["points"].is_array()) throw InputError("piecewise points must be an array of [x, y] pairs");
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j["points"]) {
            if (!p.is_array() || p.size() != 2) throw InputError("piecewise points must be [x, y] pairs");
            pts.emplace_back(as_number(p[0], "gauge point"), as_number(p[1], "gauge point"));
        }
        return build([&] { return GrowthGauge::piecewise(std::move(pts)); });
    }
    throw InputError("unknown gauge kind \"" + kind + "\"");
}

Json to_json(const GrowthGauge& g) {
    return std::visit(
        [](const auto& k) -> Json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, GrowthGauge::Power>) {
                return Json{{"kind", "power"}, {"p", k.p}};
            } else if constexpr (std::is_same_v<T, GrowthGauge::Linear>) {
                return Json{{"kind", "linear"}, {"slope", k.slope}};
            } else {
                Json pts = Json::array();
                for (const auto& [x, y] : k.points) pts.push_back(Json::array({x, y}));
                return Json{{"kind", "piecewise"}, {"points", pts}};
            }
        },
        g.kind());
}

DiskCharge charge_from_json(const Json& j) {
    expect_keys(j, "charge", {}, {"atoms", "density"});
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        if (!j["atoms"].is_array()) throw InputError("atoms must be an array of [r, theta, mass] triples");
        for (const auto& a : j["atoms"]) {
            if (!a.is_array() || a.size() != 3) throw InputError("atoms must be [r, theta, mass] triples");
            atoms.push_back({as_number(a[0], "atom r"), as_number(a[1], "atom theta"), as_number(a[2], "atom mass")});
        }
    }
    std::optional<ProductDensity> density;
    if (j.contains("density") && !j["density"].is_null()) {
        const auto& d = j["density"];
        expect_keys(d, "density", {"radial", "angular"}, {"clip"});
        SignClip clip = SignClip::none;
        if (d.contains("clip")) {
            const auto& c = d["clip"];
            if (c == "none")
                clip = SignClip::none;
            else if (c == "positive")
                clip = SignClip::positive;
            else if (c == "negative")
                clip = SignClip::negative;
            else
                throw InputError("density clip must be \"none\", \"positive\" or \"negative\"");
        }
        density = ProductDensity{radial_from_json(d["radial"]), periodic_from_json(d["angular"]), clip};
    }
    return build([&] { return DiskCharge(std::move(atoms), std::move(density)); });
}

Json to_json(const DiskCharge& mu) {
    Json atoms = Json::array();
    for (const auto& a : mu.atoms()) atoms.push_back(Json::array({a.r, a.theta, a.mass}));
    Json out{{"atoms", atoms}};
    if (const auto& d = mu.density())
        out["density"] = Json{{"radial", radial_to_json(d->radial)}, {"angular", to_json(d->angular)},
                              {"clip", clip_name(d->clip)}};
    return out;
}

Divisor divisor_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("divisor must be an array of [r, theta, multiplicity] triples");
    Divisor d;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) throw InputError("divisor entries must be [r, theta, multiplicity]");
        if (!e[2].is_number_integer()) throw InputError("divisor multiplicity must be an integer");
        const long long m = e[2].get<long long>();
        if (m < 1 || m > 1'000'000) throw InputError("divisor multiplicity must lie in [1, 1e6]");
        build([&] {
            d.add(as_number(e[0], "divisor r"), as_number(e[1], "divisor theta"), static_cast<int>(m));
            return 0;
        });
    }
    return d;
}

Json to_json(const Divisor& z) {
    Json out = Json::array();
    for (const auto& [p, m] : z.entries()) out.push_back(Json::array({p.r, p.theta, m}));
    return out;
}

SequenceGenerator generator_from_json(const Json& j) {
    const std::string kind = kind_of(j, "sequence generator");
    if (kind == "explicit") {
        expect_keys(j, "explicit generator", {"kind", "divisor"});
        return SequenceGenerator::explicit_divisor(divisor_from_json(j["divisor"]));
    }
    std::optional<double> theta0 = 0.0;
    if (j.contains("angles")) {
        const auto& a = j["angles"];
        if (a == "equidistributed") {
            theta0.reset();
            if (j.contains("theta0")) throw InputError("theta0 conflicts with equidistributed angles");
        } else if (a != "fixed") {
            throw InputError("angles must be \"fixed\" or \"equidistributed\"");
        }
    }
    if (theta0 && j.contains("theta0")) theta0 = number(j, "theta0");
    if (kind == "power_law") {
        expect_keys(j, "power_law generator", {"kind", "alpha"}, {"angles", "theta0"});
        return build([&] { return SequenceGenerator::power_law(number(j, "alpha"), theta0); });
    }
    if (kind == "geometric") {
        expect_keys(j, "geometric generator", {"kind", "q"}, {"angles", "theta0"});
        return build([&] { return SequenceGenerator::geometric(number(j, "q"), theta0); });
    }
    throw InputError("unknown sequence generator kind \"" + kind + "\"");
}

Json to_json(const SequenceGenerator& z) {
    Json out;
    const auto add_angles = [&] {
        if (z.theta0()) {
            out["angles"] = "fixed";
            out["theta0"] = *z.theta0();
        } else {
            out["angles"] = "equidistributed";
        }
    };
    if (const auto* p = std::get_if<SequenceGenerator::PowerLaw>(&z.kind())) {
        out = Json{{"kind", "power_law"}, {"alpha", p->alpha}};
        add_angles();
    } else if (const auto* g = std::get_if<SequenceGenerator::Geometric>(&z.kind())) {
        out = Json{{"kind", "geometric"}, {"q", g->q}};
        add_angles();
    } else {
        out = Json{{"kind", "explicit"}, {"divisor", to_json(std::get<SequenceGenerator::Explicit>(z.kind()).divisor)}};
    }
    return out;
}

USide u_side_from_json(const Json& j, double eps) {
    if (j.is_array()) return divisor_from_json(j);
    if (j.is_object() && j.contains("kind")) return build([&] { return generator_from_json(j).truncate(eps); });
    return charge_from_json(j);
}

MSide m_side_from_json(const Json& j) {
    if (j.is_object() && j.contains("kind")) return generator_from_json(j);
    if (j.is_array()) return atomize(divisor_from_json(j));
    return charge_from_json(j);
}

Json to_json(const TrigConvexityReport& r) {
    Json w = Json::array();
    for (const auto& x : r.witnesses) w.push_back(witness_json(x));
    return Json{{"method", r.method},     {"rho", r.rho},       {"n_grid", r.n_grid},
                {"tol", r.tol},           {"passed", r.passed}, {"max_defect", r.max_defect},
                {"witnesses", w}};
}

Json to_json(const GaugeClassReport& r) {
    return Json{{"convex_ok", r.convex_ok},
                {"zero_at_zero_ok", r.zero_at_zero_ok},
                {"normalized_ok", r.normalized_ok},
                {"max_convexity_violation", r.max_convexity_violation},
                {"value_at_one", r.value_at_one}};
}

Json to_json(const GxReport& r) {
    return Json{{"derivative_bound_ok", r.derivative_bound_ok},
                {"increasing_ok", r.increasing_ok},
                {"worst_derivative_gap", r.worst_derivative_gap},
                {"n_points", r.n_points}};
}

Json to_json(const SubharmonicityReport& r) {
    Json w = Json::array();
    for (const auto& x : r.witnesses)
        w.push_back(Json{{"r", x.r}, {"theta", x.theta}, {"laplacian", x.laplacian}, {"lower_bound", x.lower_bound}});
    return Json{{"grid", Json{{"n_r", r.n_r},
                              {"n_theta", r.n_theta},
                              {"r_min", r.r_min},
                              {"r_max", r.r_max},
                              {"dr", r.dr},
                              {"dtheta", r.dtheta},
                              {"theta_offset", r.theta_offset}}},
                {"tol", r.tol},
                {"min_laplacian", r.min_laplacian},
                {"scale", r.scale},
                {"lower_bound_ok", r.lower_bound_ok},
                {"pointwise_bound_ok", r.pointwise_bound_ok},
                {"max_pointwise_violation", r.max_pointwise_violation},
                {"audited_nodes", r.audited_nodes},
                {"skipped_nodes", r.skipped_nodes},
                {"kink_angles", r.kink_angles},
                {"kink_radii", r.kink_radii},
                {"witnesses", w}};
}

Json to_json(const MembershipReport& r) {
    return Json{{"positive_ok", r.positive_ok},       {"bounded_ok", r.bounded_ok},
                {"boundary_zero_ok", r.boundary_zero_ok}, {"min_value", r.min_value},
                {"sup_value", r.sup_value},           {"b_rho", r.b_rho},
                {"epsilons", r.epsilons},             {"boundary_values", r.boundary_values}};
}

Json to_json(const InequalityReport& r) {
    return Json{{"lhs", r.lhs},     {"rhs_integral", r.rhs_integral}, {"gap", r.gap},
                {"epsilon", r.epsilon}, {"g", r.g_descriptor},    {"h", r.h_descriptor},
                {"rho", r.rho}};
}

Json to_json(const UniquenessAudit& a) {
    return Json{{"epsilons", a.epsilons},
                {"majorant_partials", a.majorant_partials},
                {"zero_partials", a.zero_partials},
                {"majorant_stalls", a.majorant_stalls},
                {"zeros_grow", a.zeros_grow},
                {"classification", to_string(a.classification)}};
}

}  // namespace diskzero
