#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskzero/cli.hpp"

namespace {

template <class T>
void optional_flag(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
    app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diskzero: weighted zero counting and test-function audits in the unit disk"};
    app.require_subcommand(1);

    diskzero::RunConfig cfg;
    std::string format = "json";
    std::string plot;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input_path, "input JSON file ('-' for stdin)")->required();
        sub->add_option("-o,--output", cfg.output_path, "output file (default: stdout)");
        sub->add_option("-f,--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--plot", plot, "write an SVG plot to this path");
        sub->add_option("--seed", cfg.seed, "seed for randomized grids");
    };

    auto* check_h = app.add_subcommand("check-h", "rho-trigonometric convexity of h");
    common(check_h);
    optional_flag(check_h, "--rho", cfg.rho, "order rho");
    optional_flag(check_h, "--grid", cfg.grid, "mesh size");
    optional_flag(check_h, "--tol", cfg.tol, "defect tolerance");
    optional_flag(check_h, "--random-triples", cfg.random_triples, "extra off-mesh random triples");

    auto* check_g = app.add_subcommand("check-g", "growth gauge class and derivative facts");
    common(check_g);
    check_g->add_flag("--normalized", cfg.normalized, "require g(1) <= 1");

    auto* audit = app.add_subcommand("testfn-audit", "subharmonicity and membership of the test function");
    common(audit);
    optional_flag(audit, "--rho", cfg.rho, "order rho");
    optional_flag(audit, "--nr", cfg.nr, "radial intervals");
    optional_flag(audit, "--ntheta", cfg.ntheta, "angular nodes");

    auto* count = app.add_subcommand("count", "weighted radial counting");
    common(count);
    optional_flag(count, "--r", cfg.r, "radius of the closed disk");

    auto* gap = app.add_subcommand("gap", "both sides of the main inequality over a family");
    common(gap);
    optional_flag(gap, "--epsilon", cfg.epsilon, "truncation 1 - eps");

    auto* uniq = app.add_subcommand("uniqueness", "partial sums of the uniqueness conditions");
    common(uniq);
    optional_flag(uniq, "--levels", cfg.levels, "number of dyadic levels J");

    auto* ind = app.add_subcommand("indicator", "finite-radius rho-indicator estimate");
    common(ind);
    optional_flag(ind, "--rho", cfg.rho, "order rho");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "{\"error\": {\"code\": \"usage\", \"message\": " << nlohmann::json(e.what()).dump() << "}}\n";
        return diskzero::kExitInputError;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format == "csv" ? diskzero::OutputFormat::csv : diskzero::OutputFormat::json;
    if (!plot.empty()) cfg.plot_path = plot;
    return diskzero::run(cfg, std::cout, std::cerr);
}
