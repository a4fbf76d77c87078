#include "revolve/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "revolve/expr.hpp"
#include "revolve/kepler.hpp"
#include "revolve/kernels.hpp"
#include "revolve/monotone.hpp"
#include "revolve/volume.hpp"

namespace revolve::cli {

using json = nlohmann::ordered_json;

namespace {

std::string sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::pair<std::string, double> parse_binding(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("parameter '" + text + "' is not key=value");
    std::string key = text.substr(0, eq);
    const double value = expr::parse_constant(text.substr(eq + 1));
    if (!std::isfinite(value)) throw InvalidArgument("parameter '" + key + "' is not finite");
    return {std::move(key), value};
}

Interval parse_interval(const std::pair<std::string, std::string>& text) {
    const double lo = expr::parse_constant(text.first);
    const double hi = expr::parse_constant(text.second);
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("interval endpoints must be finite");
    if (!(lo < hi)) throw InvalidArgument("interval must satisfy lo < hi, got [" + sig(lo, 17) + ", " + sig(hi, 17) + "]");
    return {lo, hi};
}

expr::Expression parse_curve(const RunConfig& c) {
    expr::ParseOptions options;
    options.variable = c.variable;
    for (const auto& [k, v] : c.parameters) options.parameters.insert(k);
    return expr::parse(c.curve, options);
}

expr::Bindings bindings_of(const RunConfig& c) {
    expr::Bindings b;
    for (const auto& [k, v] : c.parameters) b.set(k, v);
    return b;
}

void write_csv(const std::string& path, const std::vector<std::pair<double, double>>& rows) {
    std::ofstream os(path);
    if (!os) throw InvalidArgument("cannot open '" + path + "' for writing");
    for (const auto& [x, y] : rows) os << sig(x, 15) << ',' << sig(y, 15) << '\n';
    if (!os) throw InvalidArgument("failed writing '" + path + "'");
}

std::vector<std::pair<double, double>> sample_expression(const RunConfig& c, Interval iv) {
    volume::VolumeProblem problem{parse_curve(c), volume::CurveRole::y_of_x, iv, volume::Axis::y,
                                  volume::Method::all, c.tol, bindings_of(c)};
    return volume::sample_curve(problem, c.sample_count);
}

json partition_json(const monotone::MonotonePartition& p) {
    json dirs = json::array();
    for (auto d : p.directions) dirs.push_back(std::string(monotone::to_string(d)));
    return {{"breakpoints", p.breakpoints}, {"directions", dirs}, {"extremum_values", p.extremum_values}};
}

void print_partition_text(std::ostream& out, const monotone::MonotonePartition& p) {
    for (std::size_t i = 0; i < p.piece_count(); ++i)
        out << "  [" << sig(p.breakpoints[i], 12) << ", " << sig(p.breakpoints[i + 1], 12) << "]  "
            << monotone::to_string(p.directions[i]) << '\n';
}

int run_volume(const RunConfig& c, std::ostream& out) {
    const volume::Axis axis = volume::parse_axis(c.axis);
    volume::CurveRole role = axis == volume::Axis::y ? volume::CurveRole::y_of_x : volume::CurveRole::x_of_y;
    if (c.role)
        role = volume::parse_role(*c.role);
    else if (c.variable == "x")
        role = volume::CurveRole::y_of_x;
    else if (c.variable == "y")
        role = volume::CurveRole::x_of_y;
    const Interval iv = parse_interval(c.interval);
    volume::VolumeProblem problem{parse_curve(c), role, iv, axis, volume::parse_method(c.method), c.tol,
                                  bindings_of(c)};
    const volume::VolumeReport r = volume::solve(problem);
    if (c.csv_path) write_csv(*c.csv_path, volume::sample_curve(problem, c.sample_count));

    if (c.format == OutputFormat::json) {
        json checks = json::array();
        for (const auto& x : r.cross_checks)
            checks.push_back({{"method", x.method},
                              {"value", x.value},
                              {"delta", x.delta},
                              {"tolerance", x.tolerance},
                              {"agrees", x.agrees}});
        json doc = {{"value", r.value},
                    {"method", r.method},
                    {"sign_factor", r.sign_factor},
                    {"error_estimate", r.error_estimate},
                    {"partition", r.partition ? partition_json(*r.partition) : json(nullptr)},
                    {"cross_checks", checks},
                    {"warnings", r.warnings},
                    {"converged", r.converged}};
        out << doc.dump(2) << '\n';
    } else {
        out << "method          " << r.method << '\n'
            << "value           " << sig(r.value, 12) << '\n'
            << "sign_factor     " << (r.sign_factor > 0 ? "+1" : "-1") << '\n'
            << "error_estimate  " << sig(r.error_estimate, 3) << '\n';
        if (r.partition) {
            out << "partition\n";
            print_partition_text(out, *r.partition);
        }
        if (!r.cross_checks.empty()) {
            out << "cross-checks\n";
            char line[160];
            std::snprintf(line, sizeof line, "  %-18s %-20s %-11s %-11s %s\n", "method", "value", "|delta|",
                          "tolerance", "ok");
            out << line;
            for (const auto& x : r.cross_checks) {
                std::snprintf(line, sizeof line, "  %-18s %-20s %-11s %-11s %s\n", x.method.c_str(),
                              sig(x.value, 12).c_str(), sig(x.delta, 3).c_str(), sig(x.tolerance, 3).c_str(),
                              x.agrees ? "yes" : "NO");
                out << line;
            }
        }
        for (const auto& w : r.warnings) out << "warning: " << w << '\n';
    }
    return r.converged ? exit_ok : exit_numeric;
}

int run_partition(const RunConfig& c, std::ostream& out) {
    const Interval iv = parse_interval(c.interval);
    const Curve curve = Curve::from_expression(parse_curve(c), bindings_of(c));
    const auto p = monotone::partition(curve, iv, c.tol);
    if (c.csv_path) write_csv(*c.csv_path, sample_expression(c, iv));

    std::optional<bool> even;
    std::string detail;
    try {
        even = monotone::check_lemma1(p, curve(iv.lo), curve(iv.hi));
        detail = *even ? "interior extremum count is even" : "interior extremum count is odd";
    } catch (const PreconditionViolated& e) {
        detail = std::string("not applicable: ") + e.what();
    }

    if (c.format == OutputFormat::json) {
        json doc = partition_json(p);
        doc["interior_count"] = p.interior_count();
        doc["lemma1"] = {{"applicable", even.has_value()}, {"even", even ? json(*even) : json(nullptr)},
                         {"detail", detail}};
        out << doc.dump(2) << '\n';
    } else {
        out << "pieces\n";
        print_partition_text(out, p);
        out << "extrema\n";
        for (std::size_t i = 0; i < p.interior_count(); ++i)
            out << "  x = " << sig(p.breakpoints[i + 1], 12) << "  f = " << sig(p.extremum_values[i], 12) << '\n';
        out << "parity          " << detail << '\n';
    }
    return exit_ok;
}

int run_verify(const RunConfig& c, std::ostream& out) {
    const Interval iv = parse_interval(c.interval);
    const Curve curve = Curve::from_expression(parse_curve(c), bindings_of(c));
    const auto report = monotone::validate_revolution_hypotheses(curve, iv, c.tol);
    if (c.csv_path) write_csv(*c.csv_path, sample_expression(c, iv));

    if (c.format == OutputFormat::json) {
        json violations = json::array();
        for (const auto& v : report.violations)
            violations.push_back(
                {{"rule", std::string(monotone::to_string(v.rule))}, {"location", v.location}, {"detail", v.detail}});
        json doc = {{"satisfied", report.satisfied}, {"c", report.c}, {"d", report.d}, {"violations", violations}};
        out << doc.dump(2) << '\n';
    } else {
        out << "satisfied       " << (report.satisfied ? "yes" : "no") << '\n'
            << "c               " << sig(report.c, 12) << '\n'
            << "d               " << sig(report.d, 12) << '\n';
        for (const auto& v : report.violations)
            out << "violation       " << monotone::to_string(v.rule) << " at " << sig(v.location, 12) << ": "
                << v.detail << '\n';
    }
    return report.satisfied ? exit_ok : exit_hypothesis;
}

int run_kepler(const RunConfig& c, std::ostream& out) {
    const kepler::KeplerCurve k(c.eccentricity);
    const auto refs = kepler::reference_volumes(k);

    json forward = json::array();
    json inverse = json::array();
    for (const auto& text : c.forward_at) {
        const double y = expr::parse_constant(text);
        forward.push_back({{"y", y}, {"x", k.forward(y)}});
    }
    for (const auto& text : c.invert_at) {
        const double x = expr::parse_constant(text);
        const auto root = k.inverse_detailed(x, c.tol);
        inverse.push_back({{"x", x},
                           {"y", root.root},
                           {"residual", root.residual},
                           {"iterations", root.iterations},
                           {"method", std::string(numerics::to_string(root.method_used))}});
    }
    if (c.csv_path) {
        const auto xs = kernels::uniform_grid(0.0, 2.0 * std::numbers::pi, c.sample_count);
        std::vector<double> ys(xs.size());
        kepler::parallel::inverse_many(k, xs, ys, c.tol);
        std::vector<std::pair<double, double>> rows(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) rows[i] = {xs[i], ys[i]};
        write_csv(*c.csv_path, rows);
    }

    if (c.format == OutputFormat::json) {
        json doc = {{"eccentricity", k.eccentricity()},
                    {"forward", forward},
                    {"inverse", inverse},
                    {"reference_volumes", {{"about_y", refs.about_y}, {"about_x", refs.about_x}}}};
        out << doc.dump(2) << '\n';
    } else {
        out << "eccentricity    " << sig(k.eccentricity(), 12) << '\n';
        for (const auto& f : forward)
            out << "forward         y = " << sig(f["y"].get<double>(), 12) << "  x = " << sig(f["x"].get<double>(), 12)
                << '\n';
        for (const auto& i : inverse)
            out << "inverse         x = " << sig(i["x"].get<double>(), 12) << "  y = " << sig(i["y"].get<double>(), 12)
                << "  residual = " << sig(i["residual"].get<double>(), 3) << '\n';
        out << "volume about y  " << sig(refs.about_y, 12) << '\n'
            << "volume about x  " << sig(refs.about_x, 12) << '\n';
    }
    return exit_ok;
}

void add_tolerance_options(CLI::App* cmd, RunConfig& c, std::optional<double>& rel_override) {
    cmd->add_option("--abs-tol", c.tol.abs_tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--rel-tol", rel_override, "relative quadrature tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--residual-tol", c.tol.residual_tol, "root residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-depth", c.tol.max_depth, "maximum bisection depth")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", c.tol.max_iter, "maximum root iterations")->check(CLI::PositiveNumber);
}

}  // namespace

std::optional<int> parse_args(const std::vector<std::string>& args, RunConfig& c, std::ostream& out,
                              std::ostream& err) {
    CLI::App app{"Volumes of solids of revolution, cross-validated", "revolve"};
    app.require_subcommand(1);

    std::optional<double> rel_override;
    std::vector<std::string> params;
    bool json_flag = false;
    std::optional<std::string> role;

    auto curve_options = [&](CLI::App* cmd) {
        cmd->add_option("--curve", c.curve, "curve expression")->required();
        cmd->add_option("--var", c.variable, "free variable name")->capture_default_str();
        cmd->add_option("--interval", c.interval, "interval endpoints (expressions such as 2*pi)")->required();
        cmd->add_option("--param", params, "parameter binding key=value (repeatable)");
        cmd->add_option("--csv", c.csv_path, "write curve samples to this CSV file");
        cmd->add_option("--samples", c.sample_count, "CSV sample count")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_flag("--json", json_flag, "emit JSON");
        add_tolerance_options(cmd, c, rel_override);
    };

    auto* volume_cmd = app.add_subcommand("volume", "volume of revolution of the region under a curve");
    curve_options(volume_cmd);
    volume_cmd->add_option("--axis", c.axis, "rotation axis: y or x")->check(CLI::IsMember({"x", "y"}))->capture_default_str();
    volume_cmd->add_option("--role", role, "curve role: y-of-x or x-of-y (default from --var: x gives y-of-x, y gives x-of-y, otherwise from --axis)")->check(CLI::IsMember({"y-of-x", "x-of-y"}));
    volume_cmd->add_option("--method", c.method, "shell|disk|theorem1|theorem2|theorem3|piecewise|all")
        ->check(CLI::IsMember({"shell", "disk", "theorem1", "theorem2", "theorem3", "piecewise", "all"}))
        ->capture_default_str();

    auto* partition_cmd = app.add_subcommand("partition", "strictly monotone pieces and extremum parity");
    curve_options(partition_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "check the single-intersection hypotheses");
    curve_options(verify_cmd);

    auto* kepler_cmd = app.add_subcommand("kepler", "Kepler curve x = y - e sin(y)");
    kepler_cmd->add_option("--eps", c.eccentricity, "eccentricity in (0, 1)")->required();
    kepler_cmd->add_option("--forward", c.forward_at, "evaluate x = g(y) at these y");
    kepler_cmd->add_option("--invert", c.invert_at, "solve for y at these x");
    kepler_cmd->add_option("--csv", c.csv_path, "write inverse-curve samples on [0, 2 pi]");
    kepler_cmd->add_option("--samples", c.sample_count, "CSV sample count")->check(CLI::PositiveNumber);
    kepler_cmd->add_flag("--json", json_flag, "emit JSON");
    add_tolerance_options(kepler_cmd, c, rel_override);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    c.subcommand = app.get_subcommands().front()->get_name();
    c.format = json_flag ? OutputFormat::json : OutputFormat::text;
    c.role = role;
    try {
        if (const char* env = std::getenv("REVOLVE_DEFAULT_TOL"); env && *env) {
            const double v = expr::parse_constant(env);
            if (!(v > 0) || !std::isfinite(v)) throw InvalidArgument("REVOLVE_DEFAULT_TOL must be a positive number");
            c.tol.rel_tol = v;
        }
        if (rel_override) c.tol.rel_tol = *rel_override;
        for (const auto& p : params) c.parameters.push_back(parse_binding(p));
        c.tol.validate();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return std::nullopt;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.subcommand == "volume") return run_volume(c, out);
        if (c.subcommand == "partition") return run_partition(c, out);
        if (c.subcommand == "verify") return run_verify(c, out);
        if (c.subcommand == "kepler") return run_kepler(c, out);
        err << "error: unknown subcommand '" << c.subcommand << "'\n";
        return exit_usage;
    } catch (const monotone::HypothesisViolation& e) {
        err << "hypothesis violation: " << e.what() << '\n';
        for (const auto& v : e.report().violations)
            err << "  " << monotone::to_string(v.rule) << " at " << sig(v.location, 12) << ": " << v.detail << '\n';
        return exit_hypothesis;
    } catch (const HypothesisError& e) {
        err << "hypothesis violation: " << e.what() << '\n';
        return exit_hypothesis;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    if (auto code = parse_args(args, config, out, err)) return *code;
    return run(config, out, err);
}

}  // namespace revolve::cli
