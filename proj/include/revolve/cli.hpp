#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "revolve/numerics.hpp"

namespace revolve::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_hypothesis = 2,
    exit_numeric = 3,
};

enum class OutputFormat { text, json };

struct RunConfig {
    std::string subcommand;  // volume | partition | verify | kepler
    std::string curve;
    std::string variable = "x";
    std::pair<std::string, std::string> interval;
    std::string axis = "y";
    std::optional<std::string> role;  // defaults from the axis
    std::string method = "all";
    numerics::Tolerances tol;
    std::vector<std::pair<std::string, double>> parameters;
    OutputFormat format = OutputFormat::text;
    std::optional<std::string> csv_path;
    std::size_t sample_count = 512;

    // kepler
    double eccentricity = 0.0;
    std::vector<std::string> forward_at;
    std::vector<std::string> invert_at;
};

/// Parses argv (without the program name) into a RunConfig. Returns the exit
/// code to use instead when parsing ends the run (help, usage error).
std::optional<int> parse_args(const std::vector<std::string>& args, RunConfig& config, std::ostream& out,
                              std::ostream& err);

/// Executes a parsed configuration; reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revolve::cli
