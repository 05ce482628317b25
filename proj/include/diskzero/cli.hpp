#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace diskzero {

enum class OutputFormat { json, csv };

/// One CLI invocation. Flag values override the matching input-file fields.
struct RunConfig {
    std::string command;
    std::string input_path;   // "-" reads standard input
    std::string output_path;  // empty writes to the output stream
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> plot_path;
    std::uint64_t seed = 0;

    std::optional<double> rho;
    std::optional<std::size_t> grid;
    std::optional<double> tol;
    std::optional<std::size_t> random_triples;
    bool normalized = false;
    std::optional<std::size_t> nr;
    std::optional<std::size_t> ntheta;
    std::optional<double> r;
    std::optional<double> epsilon;
    std::optional<std::size_t> levels;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command. Reports go to the output path (or out); failures are a
/// JSON object {"error": {...}} on err. Returns 0, 1 or 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace diskzero
