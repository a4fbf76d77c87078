#include "revolve/volume.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>

#include "revolve/kernels.hpp"

namespace revolve::volume {

using monotone::Direction;
using monotone::MonotonePartition;

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void require_proper(Interval iv) {
    if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
        throw InvalidProblem("interval must be finite with lo < hi");
}

void require_axis_side(Interval iv) {
    if (!(iv.lo >= 0.0))
        throw InvalidProblem("interval [" + fmt(iv.lo) + ", " + fmt(iv.hi) + "] crosses the rotation axis");
}

void require_nonnegative(const Curve& f, Interval iv) {
    const auto xs = kernels::uniform_grid(iv.lo, iv.hi, monotone::default_nonnegativity_grid);
    const auto ys = kernels::parallel::sample(f.value_fn(), xs);
    const auto lowest = kernels::min_sample(xs, ys);
    if (!std::isfinite(lowest.value)) throw NonFiniteEvaluation(lowest.x);
    if (lowest.value < -monotone::nonnegativity_slack)
        throw NegativeCurve("curve is negative (" + fmt(lowest.value) + ") at " + fmt(lowest.x));
}

void require_monotone(const Curve& f, Interval iv, const Tolerances& tol) {
    const auto crit = monotone::critical_points(f, iv, tol);
    if (!crit.empty()) {
        std::string where;
        for (double x : crit) where += (where.empty() ? "" : ", ") + fmt(x);
        throw NotMonotone("curve is not strictly monotone on [" + fmt(iv.lo) + ", " + fmt(iv.hi) +
                          "]; extrema at " + where);
    }
}

int orientation(double f_a, double f_b) {
    if (f_a == f_b) throw NotMonotone("curve takes equal values at both ends of the interval");
    return f_b > f_a ? 1 : -1;
}

int direction_sign(Direction d) { return d == Direction::increasing ? 1 : -1; }

struct Formula {
    double value;
    double error;
    bool converged;
};

// sign * { pi [b^2 f(b) - a^2 f(a)] - 2 pi Int_a^b x f(x) dx }
Formula sign_corrected(const Curve& f, Interval iv, int sign, const Tolerances& tol) {
    const double a = iv.lo, b = iv.hi;
    const double f_a = f(a), f_b = f(b);
    const auto moment = numerics::integrate([&](double x) { return x * f(x); }, a, b, tol);
    const double boundary = pi * (b * b * f_b - a * a * f_a);
    const double value = sign * (boundary - 2.0 * pi * moment.value);
    return {value, 2.0 * pi * moment.error_estimate, moment.converged};
}

MonotonePartition single_piece(Interval iv, int sign) {
    return {{iv.lo, iv.hi}, {sign > 0 ? Direction::increasing : Direction::decreasing}, {}};
}

void record_convergence(VolumeReport& r, bool converged, std::string_view what) {
    if (converged) return;
    r.converged = false;
    r.warnings.push_back(std::string(what) + ": quadrature did not reach the requested tolerance");
}

// pi Int over `levels` of (inverse of f on piece)^2.
numerics::QuadratureResult inverted_square_integral(const Curve& f, Interval piece, Interval levels,
                                                    const Tolerances& tol) {
    const double v_lo = f(piece.lo), v_hi = f(piece.hi);
    double seed = piece.midpoint();
    auto integrand = [&](double level) {
        double guess = seed;
        if (v_hi != v_lo && !(guess > piece.lo && guess < piece.hi))
            guess = piece.lo + (level - v_lo) / (v_hi - v_lo) * piece.width();
        const double x = invert_on_piece(f, piece, level, tol, std::clamp(guess, piece.lo, piece.hi));
        seed = x;
        return x * x;
    };
    return numerics::integrate(integrand, levels.lo, levels.hi, tol);
}

Interval value_range(const Curve& f, Interval piece) {
    const double u = f(piece.lo), v = f(piece.hi);
    return {std::min(u, v), std::max(u, v)};
}

VolumeReport disk_about(const Curve& curve, bool direct, Interval span, const Tolerances& tol,
                        std::optional<Interval> domain) {
    require_proper(span);
    VolumeReport r;
    r.method = "disk";
    numerics::QuadratureResult q;
    if (direct) {
        q = numerics::integrate([&](double t) {
            const double v = curve(t);
            return v * v;
        }, span.lo, span.hi, tol);
        const double u = curve(span.lo), v = curve(span.hi);
        r.sign_factor = v < u ? -1 : 1;
    } else {
        if (!domain) throw InvalidProblem("disk volume of an inverted curve needs the curve's own interval");
        require_proper(*domain);
        try {
            require_monotone(curve, *domain, tol);
        } catch (const NotMonotone& e) {
            throw NotInvertible(e.what());
        }
        const Interval range = value_range(curve, *domain);
        const double slack = std::max(tol.abs_tol, tol.rel_tol * std::max(std::abs(range.lo), std::abs(range.hi)));
        if (span.lo < range.lo - slack || span.hi > range.hi + slack)
            throw InvalidProblem("levels [" + fmt(span.lo) + ", " + fmt(span.hi) + "] exceed the curve's range [" +
                                 fmt(range.lo) + ", " + fmt(range.hi) + "]");
        q = inverted_square_integral(curve, *domain, span, tol);
        r.sign_factor = orientation(curve(domain->lo), curve(domain->hi));
        r.partition = single_piece(*domain, r.sign_factor);
    }
    r.value = pi * q.value;
    r.error_estimate = pi * q.error_estimate;
    record_convergence(r, q.converged, "disk");
    return r;
}

VolumeReport theorem1_impl(const Curve& f, Interval iv, const Tolerances& tol) {
    require_proper(iv);
    require_axis_side(iv);
    require_monotone(f, iv, tol);
    require_nonnegative(f, iv);
    const int sign = orientation(f(iv.lo), f(iv.hi));
    const Formula formula = sign_corrected(f, iv, sign, tol);
    VolumeReport r;
    r.method = "theorem1";
    r.value = formula.value;
    r.error_estimate = formula.error;
    r.sign_factor = sign;
    r.partition = single_piece(iv, sign);
    record_convergence(r, formula.converged, "theorem1");
    return r;
}

VolumeReport theorem2_impl(const Curve& f, Interval iv, const Tolerances& tol, std::string_view label) {
    require_proper(iv);
    auto hypotheses = monotone::validate_revolution_hypotheses(f, iv, tol);
    if (!hypotheses.satisfied) throw monotone::HypothesisViolation(std::move(hypotheses));
    require_axis_side(iv);
    const int sign = orientation(f(iv.lo), f(iv.hi));
    const Formula formula = sign_corrected(f, iv, sign, tol);
    VolumeReport r;
    r.method = std::string(label);
    r.value = formula.value;
    r.error_estimate = formula.error;
    r.sign_factor = sign;
    r.partition = std::move(hypotheses.partition);
    record_convergence(r, formula.converged, label);
    return r;
}

// Outer pieces must run in the overall direction and every extremum value
// must lie strictly between the end values.
void require_single_intersections(const Curve& f, const MonotonePartition& p) {
    const double f_a = f(p.breakpoints.front()), f_b = f(p.breakpoints.back());
    monotone::HypothesisReport report;
    report.c = std::min(f_a, f_b);
    report.d = std::max(f_a, f_b);
    report.partition = p;
    if (f_a == f_b) {
        report.violations.push_back({monotone::Rule::endpoint_values_equal, p.breakpoints.back(),
                                     "f(a) and f(b) coincide"});
    } else {
        const Direction outer = f_a < f_b ? Direction::increasing : Direction::decreasing;
        if (p.directions.front() != outer || p.directions.back() != outer)
            report.violations.push_back({monotone::Rule::multiple_intersection, p.breakpoints.front(),
                                         "outer pieces do not run in the overall direction"});
        for (std::size_t i = 0; i < p.interior_count(); ++i) {
            const double v = p.extremum_values[i];
            if (!(v > report.c && v < report.d)) {
                report.violations.push_back({monotone::Rule::multiple_intersection, p.breakpoints[i + 1],
                                             "extremum value " + fmt(v) + " is outside (" + fmt(report.c) + ", " +
                                                 fmt(report.d) + ")"});
                break;
            }
        }
    }
    report.satisfied = report.violations.empty();
    if (!report.satisfied) throw monotone::HypothesisViolation(std::move(report));
}

VolumeReport shell_complement(const Curve& f, Interval iv, const Tolerances& tol) {
    const VolumeReport shell = shell_volume(f, iv, tol);
    const double a = iv.lo, b = iv.hi, f_a = f(a), f_b = f(b);
    const int sign = orientation(f_a, f_b);
    VolumeReport r = shell;
    r.method = "shell-complement";
    r.value = sign * (pi * (b * b * f_b - a * a * f_a) - shell.value);
    r.sign_factor = sign;
    return r;
}

struct Route {
    std::string name;
    std::function<VolumeReport()> run;
};

bool native_orientation(const VolumeProblem& p) {
    return (p.axis == Axis::y && p.role == CurveRole::y_of_x) || (p.axis == Axis::x && p.role == CurveRole::x_of_y);
}

}  // namespace

std::string_view to_string(Axis a) { return a == Axis::y ? "y" : "x"; }

std::string_view to_string(CurveRole r) { return r == CurveRole::y_of_x ? "y-of-x" : "x-of-y"; }

std::string_view to_string(Method m) {
    switch (m) {
        case Method::shell: return "shell";
        case Method::disk: return "disk";
        case Method::theorem1: return "theorem1";
        case Method::theorem2: return "theorem2";
        case Method::theorem3: return "theorem3";
        case Method::piecewise: return "piecewise";
        case Method::all: return "all";
    }
    return "unknown";
}

Axis parse_axis(std::string_view s) {
    if (s == "y") return Axis::y;
    if (s == "x") return Axis::x;
    throw InvalidArgument("axis must be 'x' or 'y', got '" + std::string(s) + "'");
}

CurveRole parse_role(std::string_view s) {
    if (s == "y-of-x") return CurveRole::y_of_x;
    if (s == "x-of-y") return CurveRole::x_of_y;
    throw InvalidArgument("role must be 'y-of-x' or 'x-of-y', got '" + std::string(s) + "'");
}

Method parse_method(std::string_view s) {
    for (Method m : {Method::shell, Method::disk, Method::theorem1, Method::theorem2, Method::theorem3,
                     Method::piecewise, Method::all})
        if (s == to_string(m)) return m;
    throw InvalidArgument("unknown method '" + std::string(s) + "'");
}

VolumeReport shell_volume(const Curve& f, Interval interval, const Tolerances& tol) {
    require_proper(interval);
    require_axis_side(interval);
    require_nonnegative(f, interval);
    const auto q = numerics::integrate([&](double x) { return x * f(x); }, interval.lo, interval.hi, tol);
    VolumeReport r;
    r.method = "shell";
    r.value = 2.0 * pi * q.value;
    r.error_estimate = 2.0 * pi * q.error_estimate;
    record_convergence(r, q.converged, "shell");
    return r;
}

VolumeReport disk_volume_y_axis(const Curve& curve, CurveRole role, Interval levels, const Tolerances& tol,
                                std::optional<Interval> domain) {
    return disk_about(curve, role == CurveRole::x_of_y, levels, tol, domain);
}

VolumeReport disk_volume_x_axis(const Curve& curve, CurveRole role, Interval abscissae, const Tolerances& tol,
                                std::optional<Interval> domain) {
    return disk_about(curve, role == CurveRole::y_of_x, abscissae, tol, domain);
}

VolumeReport piecewise_disk_volume(const Curve& f, const MonotonePartition& p, const Tolerances& tol) {
    p.check_alternation();
    VolumeReport r;
    r.method = "disk";
    bool converged = true;
    double total = 0.0, error = 0.0;
    for (std::size_t i = 0; i < p.piece_count(); ++i) {
        const Interval piece = p.piece(i);
        const auto q = inverted_square_integral(f, piece, value_range(f, piece), tol);
        total += (i % 2 == 0 ? 1.0 : -1.0) * q.value;
        error += q.error_estimate;
        converged = converged && q.converged;
    }
    r.value = pi * total;
    r.error_estimate = pi * error;
    r.sign_factor = orientation(f(p.breakpoints.front()), f(p.breakpoints.back()));
    r.partition = p;
    record_convergence(r, converged, "disk");
    return r;
}

VolumeReport theorem1_y(const Curve& f, Interval interval, const Tolerances& tol) {
    return theorem1_impl(f, interval, tol);
}

VolumeReport theorem1_x(const Curve& g, Interval interval, const Tolerances& tol) {
    return theorem1_impl(g, interval, tol);
}

VolumeReport theorem2_y(const Curve& f, Interval interval, const Tolerances& tol) {
    return theorem2_impl(f, interval, tol, "theorem2");
}

VolumeReport theorem3_x(const Curve& g, Interval interval, const Tolerances& tol) {
    return theorem2_impl(g, interval, tol, "theorem3");
}

VolumeReport piecewise_signed_sum(const Curve& f, const MonotonePartition& p, const Tolerances& tol) {
    p.check_alternation();
    const Interval whole{p.breakpoints.front(), p.breakpoints.back()};
    require_axis_side(whole);
    require_single_intersections(f, p);
    require_nonnegative(f, whole);

    VolumeReport r;
    r.method = "piecewise";
    bool converged = true;
    double total = 0.0, error = 0.0;
    for (std::size_t i = 0; i < p.piece_count(); ++i) {
        const Formula piece = sign_corrected(f, p.piece(i), direction_sign(p.directions[i]), tol);
        total += (i % 2 == 0 ? 1.0 : -1.0) * piece.value;
        error += piece.error;
        converged = converged && piece.converged;
    }
    r.value = total;
    r.error_estimate = error;
    r.sign_factor = orientation(f(whole.lo), f(whole.hi));
    r.partition = p;
    record_convergence(r, converged, "piecewise");
    return r;
}

VolumeReport cross_validate(const VolumeProblem& problem) {
    problem.tol.validate();
    require_proper(problem.interval);
    const Curve curve = Curve::from_expression(problem.curve, problem.parameters);
    const Interval iv = problem.interval;
    const Tolerances tol = problem.tol;

    std::vector<Route> routes;
    if (native_orientation(problem)) {
        routes.push_back({problem.axis == Axis::y ? "theorem2" : "theorem3", [&] {
                              return problem.axis == Axis::y ? theorem2_y(curve, iv, tol) : theorem3_x(curve, iv, tol);
                          }});
        routes.push_back({"piecewise", [&] { return piecewise_signed_sum(curve, monotone::partition(curve, iv, tol), tol); }});
        routes.push_back({"shell-complement", [&] { return shell_complement(curve, iv, tol); }});
        routes.push_back({"disk", [&] { return piecewise_disk_volume(curve, monotone::partition(curve, iv, tol), tol); }});
    } else {
        routes.push_back({"disk", [&] { return disk_about(curve, true, iv, tol, std::nullopt); }});
        routes.push_back({"theorem1", [&] {
                              require_monotone(curve, iv, tol);
                              const Interval range = value_range(curve, iv);
                              const Curve inverse = inverse_curve(curve, iv, tol);
                              return theorem1_impl(inverse, range, tol);
                          }});
    }

    const auto n = static_cast<std::ptrdiff_t>(routes.size());
    std::vector<VolumeReport> results(routes.size());
    std::vector<std::exception_ptr> failures(routes.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            results[i] = routes[i].run();
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    if (failures[0]) std::rethrow_exception(failures[0]);

    VolumeReport report = results[0];
    report.method = routes[0].name;
    const double base_tol = 100.0 * std::max(tol.abs_tol, tol.rel_tol * std::abs(report.value));
    report.cross_checks.push_back({routes[0].name, report.value, 0.0, base_tol + report.error_estimate, true});
    for (std::size_t i = 1; i < routes.size(); ++i) {
        if (failures[i]) {
            try {
                std::rethrow_exception(failures[i]);
            } catch (const std::exception& e) {
                report.warnings.push_back(routes[i].name + " unavailable: " + e.what());
            }
            continue;
        }
        const VolumeReport& other = results[i];
        CrossCheck check;
        check.method = routes[i].name;
        check.value = other.value;
        check.delta = std::abs(other.value - report.value);
        check.tolerance = base_tol + report.error_estimate + other.error_estimate;
        check.agrees = check.delta <= check.tolerance;
        if (!check.agrees)
            report.warnings.push_back(check.method + " differs from " + report.method + " by " + fmt(check.delta) +
                                      " (tolerance " + fmt(check.tolerance) + ")");
        for (const auto& w : other.warnings) report.warnings.push_back(w);
        report.cross_checks.push_back(check);
    }
    return report;
}

VolumeReport solve(const VolumeProblem& problem) {
    if (problem.method == Method::all) return cross_validate(problem);
    problem.tol.validate();
    require_proper(problem.interval);
    const Curve curve = Curve::from_expression(problem.curve, problem.parameters);
    const Interval iv = problem.interval;
    const Tolerances& tol = problem.tol;
    const bool native = native_orientation(problem);
    auto reject = [&](const char* need) -> VolumeReport {
        throw InvalidProblem("method " + std::string(to_string(problem.method)) + " needs " + need + " (got axis " +
                             std::string(to_string(problem.axis)) + ", role " + std::string(to_string(problem.role)) +
                             ")");
    };

    switch (problem.method) {
        case Method::shell:
            if (!native) return reject("the curve given as a function of the rotation axis coordinate");
            return shell_volume(curve, iv, tol);
        case Method::disk:
            if (native) return piecewise_disk_volume(curve, monotone::partition(curve, iv, tol), tol);
            return disk_about(curve, true, iv, tol, std::nullopt);
        case Method::theorem1:
            if (!native) return reject("the curve given as a function of the rotation axis coordinate");
            return problem.axis == Axis::y ? theorem1_y(curve, iv, tol) : theorem1_x(curve, iv, tol);
        case Method::theorem2:
            if (problem.axis != Axis::y || problem.role != CurveRole::y_of_x) return reject("axis y and role y-of-x");
            return theorem2_y(curve, iv, tol);
        case Method::theorem3:
            if (problem.axis != Axis::x || problem.role != CurveRole::x_of_y) return reject("axis x and role x-of-y");
            return theorem3_x(curve, iv, tol);
        case Method::piecewise:
            if (!native) return reject("the curve given as a function of the rotation axis coordinate");
            return piecewise_signed_sum(curve, monotone::partition(curve, iv, tol), tol);
        case Method::all: break;
    }
    return cross_validate(problem);
}

std::vector<std::pair<double, double>> sample_curve(const VolumeProblem& problem, std::size_t count) {
    require_proper(problem.interval);
    if (count == 0) throw InvalidArgument("sample count must be positive");
    const expr::CompiledExpression compiled(problem.curve, problem.parameters);
    const auto xs = kernels::uniform_grid(problem.interval.lo, problem.interval.hi, count);
    const auto ys = kernels::parallel::sample([&](double t) { return compiled(t); }, xs);
    std::vector<std::pair<double, double>> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = {xs[i], ys[i]};
    return out;
}

}  // namespace revolve::volume
