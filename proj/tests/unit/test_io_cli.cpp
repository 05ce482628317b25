#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diskzero/cli.hpp"
#include "diskzero/json_io.hpp"
#include "diskzero/plot.hpp"
#include "oracles.hpp"

using namespace diskzero;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("diskzero_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::string& command, const std::string& input_path, RunConfig cfg = {}) {
    cfg.command = command;
    cfg.input_path = input_path;
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("periodic functions round-trip through JSON") {
    const std::vector<std::string> docs = {
        R"({"kind": "truncated_cosine", "rho": 2.5})",
        R"({"kind": "constant", "c": 0.25})",
        R"({"kind": "support", "points": [[1, 0], [0, 1], [-0.5, -0.5]]})",
        R"({"kind": "samples", "values": [1, 0.5, 0.25, 0.5, 1, 0.5, 0.25, 0.5, 1, 0.5, 0.25, 0.5, 1, 0.5, 0.25, 0.5], "interpolation": "piecewise_linear"})",
        R"({"kind": "positive_part", "inner": {"kind": "samples", "values": [1, -1, 0.5, 0, 1, -1, 0.5, 0, 1, -1, 0.5, 0, 1, -1, 0.5, 0]}})",
        R"({"kind": "negative_part", "inner": {"kind": "samples", "values": [1, -1, 0.5, 0, 1, -1, 0.5, 0, 1, -1, 0.5, 0, 1, -1, 0.5, 0]}})",
        R"({"kind": "scaled", "c": 3, "inner": {"kind": "truncated_cosine", "rho": 1}})",
        R"({"kind": "sum", "terms": [{"kind": "constant", "c": 1}, {"kind": "truncated_cosine", "rho": 1}, {"kind": "constant", "c": 2}]})",
    };
    for (const auto& doc : docs) {
        const auto h = periodic_from_json(Json::parse(doc));
        const auto j = to_json(h);
        const auto again = periodic_from_json(j);
        CHECK(dump_json(to_json(again)) == dump_json(j));
        for (double th = -3; th < 3; th += 0.37) CHECK(again(th) == h(th));
    }
}

TEST_CASE("gauges, charges, divisors and generators round-trip") {
    for (const char* doc : {R"({"kind": "power", "p": 2})", R"({"kind": "linear", "slope": 0.5})",
                            R"({"kind": "piecewise", "points": [[0, 0], [0.5, 0.1], [1, 1]]})"}) {
        const auto g = gauge_from_json(Json::parse(doc));
        CHECK(dump_json(to_json(gauge_from_json(to_json(g)))) == dump_json(to_json(g)));
    }
    const auto mu = charge_from_json(Json::parse(
        R"({"atoms": [[0.5, 1, 2], [0.7, -1, -0.5]], "density": {"radial": {"kind": "boundary_power", "coef": 1, "exponent": 2}, "angular": {"kind": "constant", "c": 1}, "clip": "positive"}})"));
    CHECK(mu.atoms().size() == 2);
    CHECK(mu.density()->clip == SignClip::positive);
    CHECK(dump_json(to_json(charge_from_json(to_json(mu)))) == dump_json(to_json(mu)));

    const auto z = divisor_from_json(Json::parse("[[0.5, 0, 2], [0.9, 3.14159, 1]]"));
    CHECK(z.total_multiplicity() == 3);
    CHECK(dump_json(to_json(divisor_from_json(to_json(z)))) == dump_json(to_json(z)));

    const auto gen = generator_from_json(Json::parse(R"({"kind": "power_law", "alpha": 1.5, "angles": "equidistributed"})"));
    CHECK_FALSE(gen.theta0().has_value());
    CHECK(dump_json(to_json(generator_from_json(to_json(gen)))) == dump_json(to_json(gen)));
}

TEST_CASE("malformed objects are input errors") {
    CHECK_THROWS_AS(periodic_from_json(Json::parse(R"({"kind": "nope"})")), InputError);
    CHECK_THROWS_AS(periodic_from_json(Json::parse(R"({"kind": "constant", "c": 1, "extra": 0})")), InputError);
    CHECK_THROWS_AS(periodic_from_json(Json::parse(R"({"kind": "constant"})")), InputError);
    CHECK_THROWS_AS(periodic_from_json(Json::parse(R"({"kind": "truncated_cosine", "rho": -1})")), InputError);
    CHECK_THROWS_AS(gauge_from_json(Json::parse(R"({"kind": "power", "p": 0.5})")), InputError);
    CHECK_THROWS_AS(divisor_from_json(Json::parse("[[0.5, 0, 1.5]]")), InputError);
    CHECK_THROWS_AS(divisor_from_json(Json::parse("[[1.5, 0, 1]]")), InputError);
    CHECK_THROWS_AS(charge_from_json(Json::parse(R"({"atoms": [[0.5, 0]]})")), InputError);
    CHECK_THROWS_AS(periodic_from_json(Json::parse(R"({"kind": "samples", "values": [1, 2, 3]})")), InputError);
}

TEST_CASE("numbers are written with 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2.0");
    CHECK(format_number(1e-20) == "9.9999999999999995e-21");
    CHECK(format_number(NAN) == "null");
    oracle::Rng rng(51);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.integer(-30, 30));
        CHECK(std::stod(format_number(x)) == x);
    }
    const Json j{{"a", 0.1}, {"b", std::vector<double>{1.0, 0.5}}, {"c", Json{{"d", true}}}};
    const auto text = dump_json(j);
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    CHECK(text.find("[1.0, 0.5]") != std::string::npos);
    CHECK(Json::parse(text)["a"].get<double>() == 0.1);
}

TEST_CASE("cli examples and exit codes") {
    TempDir tmp;
    const auto h_in = tmp.write("h.json", R"({"h": {"kind": "truncated_cosine", "rho": 2}, "rho": 2})");
    const auto r1 = run_cli("check-h", h_in);
    CHECK(r1.code == kExitOk);
    CHECK(Json::parse(r1.out)["passed"] == true);
    CHECK(Json::parse(r1.out)["methods_agree"] == true);

    const auto bad_h = tmp.write("bad_h.json", R"({"h": {"kind": "truncated_cosine", "rho": 3}, "rho": 1})");
    CHECK(run_cli("check-h", bad_h).code == kExitPropertyFailure);

    const auto g_in = tmp.write("g.json", R"({"g": {"kind": "linear", "slope": 3}})");
    RunConfig norm;
    norm.normalized = true;
    const auto r2 = run_cli("check-g", g_in, norm);
    CHECK(r2.code == kExitPropertyFailure);
    CHECK(Json::parse(r2.out)["class"]["normalized_ok"] == false);
    CHECK(run_cli("check-g", g_in).code == kExitOk);

    const auto u_in = tmp.write("u.json", R"({"Z": {"kind": "power_law", "alpha": 1}, "g": {"kind": "power", "p": 1},
                                              "h": {"kind": "constant", "c": 1}})");
    const auto r3 = run_cli("uniqueness", u_in);
    CHECK(r3.code == kExitOk);
    CHECK(Json::parse(r3.out)["classification"] == "ForcesZero");
    const auto u2_in = tmp.write("u2.json", R"({"Z": {"kind": "power_law", "alpha": 2}, "g": {"kind": "power", "p": 1},
                                               "h": {"kind": "constant", "c": 1}})");
    const auto r3b = run_cli("uniqueness", u2_in);
    CHECK(r3b.code == kExitOk);
    CHECK(Json::parse(r3b.out)["classification"] == "Inconclusive");

    const auto c_in = tmp.write("c.json", R"({"divisor": [[0.5, 0, 2], [0.9, 3.141592653589793, 1]], "r": 0.7})");
    const auto r4 = run_cli("count", c_in);
    CHECK(r4.code == kExitOk);
    const auto c = Json::parse(r4.out);
    CHECK(c["value"] == 2.0);
    CHECK(c["counting_measure"] == 2);
    CHECK(c["winding_count"] == 2);

    const auto gap_in = tmp.write("gap.json", R"({"u": [[0.8, 0, 1]], "M": {"atoms": [[0.9, 0, 1]]},
        "family": [{"g": {"kind": "power", "p": 1}, "h": {"kind": "constant", "c": 1}, "rho": 1}], "epsilon": 0.01})");
    const auto r5 = run_cli("gap", gap_in);
    CHECK(r5.code == kExitOk);
    const auto row = Json::parse(r5.out)["rows"][0];
    CHECK(row["lhs"].get<double>() == doctest::Approx(0.25));
    CHECK(row["rhs_integral"].get<double>() == doctest::Approx(1.0 / 9.0));

    const auto gap_bad = tmp.write("gap_bad.json", R"({"u": [[0.8, 0, 1]], "M": {"atoms": []},
        "family": [{"g": {"kind": "linear", "slope": 3}, "h": {"kind": "constant", "c": 1}, "rho": 1}]})");
    const auto r6 = run_cli("gap", gap_bad);
    CHECK(r6.code == kExitPropertyFailure);
    CHECK(Json::parse(r6.err)["error"]["code"] == "precondition_failed");

    const auto audit_in = tmp.write("a.json", R"({"gauge": {"kind": "power", "p": 2}, "h": {"kind": "truncated_cosine", "rho": 1}, "rho": 1, "nr": 64, "ntheta": 128})");
    const auto r7 = run_cli("testfn-audit", audit_in);
    CHECK(r7.code == kExitOk);
    CHECK(Json::parse(r7.out)["subharmonicity"]["lower_bound_ok"] == true);

    const auto ind_in = tmp.write("i.json", R"({"u": {"kind": "re_power", "n": 2}, "radii": [2, 4, 8], "rho": 2})");
    const auto r8 = run_cli("indicator", ind_in);
    CHECK(r8.code == kExitOk);
}

TEST_CASE("malformed input exits 2 with an error object") {
    TempDir tmp;
    const auto cases = {
        std::make_pair("check-h", std::string("{not json")),
        std::make_pair("check-h", std::string(R"({"rho": 1})")),
        std::make_pair("check-h", std::string(R"({"h": {"kind": "constant", "c": 1}, "rho": 1, "extra": 2})")),
        std::make_pair("check-g", std::string(R"({"g": {"kind": "power", "p": "two"}})")),
        std::make_pair("count", std::string(R"({"divisor": [[0.5, 0, 1]], "r": 1.5})")),
        std::make_pair("count", std::string(R"({"divisor": [[0.5, 0, 1]], "charge": {"atoms": []}, "r": 0.5})")),
        std::make_pair("uniqueness", std::string(R"({"Z": {"kind": "power_law", "alpha": 1}, "g": {"kind": "power", "p": 1}, "h": {"kind": "constant", "c": 1}, "levels": 4})")),
        std::make_pair("nonsense", std::string("{}")),
    };
    int i = 0;
    for (const auto& [cmd, text] : cases) {
        const auto path = tmp.write("bad" + std::to_string(i++) + ".json", text);
        const auto r = run_cli(cmd, path);
        CHECK(r.code == kExitInputError);
        CHECK(r.out.empty());
        const auto e = Json::parse(r.err);
        CHECK(e["error"]["code"] == "input_error");
        CHECK(e["error"]["message"].is_string());
    }
    CHECK(run_cli("check-h", (tmp.path / "missing.json").string()).code == kExitInputError);
}

TEST_CASE("identical configs give identical bytes") {
    TempDir tmp;
    const auto h_in = tmp.write("h.json", R"({"h": {"kind": "support", "points": [[1, 0], [0, 1], [-1, -1]]}, "rho": 1, "random_triples": 2000})");
    RunConfig cfg;
    cfg.seed = 7;
    const auto a = run_cli("check-h", h_in, cfg);
    const auto b = run_cli("check-h", h_in, cfg);
    CHECK(a.out == b.out);
    cfg.format = OutputFormat::csv;
    const auto c = run_cli("check-h", h_in, cfg);
    const auto d = run_cli("check-h", h_in, cfg);
    CHECK(c.out == d.out);
    CHECK(c.out.rfind("method,", 0) == 0);
}

TEST_CASE("output and plot files") {
    TempDir tmp;
    const auto u_in = tmp.write("u.json", R"({"Z": {"kind": "power_law", "alpha": 1}, "g": {"kind": "power", "p": 1},
                                              "h": {"kind": "constant", "c": 1}})");
    RunConfig cfg;
    cfg.output_path = (tmp.path / "out.json").string();
    cfg.plot_path = (tmp.path / "plot.svg").string();
    const auto r = run_cli("uniqueness", u_in, cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    CHECK(Json::parse(slurp(tmp.path / "out.json"))["classification"] == "ForcesZero");
    const auto svg = slurp(tmp.path / "plot.svg");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);

    cfg.plot_path = (tmp.path / "no_such_dir" / "plot.svg").string();
    CHECK(run_cli("uniqueness", u_in, cfg).code == kExitInputError);
}

TEST_CASE("render_plot") {
    TempDir tmp;
    const auto path = (tmp.path / "three.svg").string();
    render_plot({{"series", {0, 1, 2}, {1, 4, 9}}}, path, {"title", "x", "y"});
    const auto svg = slurp(path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("series") != std::string::npos);
    CHECK_THROWS_AS(render_plot({}, path), InputError);
    CHECK_THROWS_AS(render_plot({{"empty", {}, {}}}, path), InputError);
    CHECK_THROWS_AS(render_plot({{"s", {0, 1}, {0, 1}}}, (tmp.path / "x" / "y.svg").string()), InputError);
}
