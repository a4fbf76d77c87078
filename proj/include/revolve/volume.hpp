#pragma once

// Volumes of solids of revolution of curvilinear trapezoids. Each volume is
// available by several independent routes so they can be checked against one
// another:
//
//   shell        2 pi Int x f(x) dx over the region under the curve
//   disk         pi Int g(y)^2 dy, inverting the curve numerically if needed
//   theorem1/2/3 sgn(f(b) - f(a)) { pi [b^2 f(b) - a^2 f(a)] - 2 pi Int x f(x) dx }
//   piecewise    alternating sum of the monotone-piece volumes
//
// The region for the sign-corrected formula is bounded by the rotation axis,
// the two levels c = min(f(a), f(b)) and d = max(f(a), f(b)), and the curve.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revolve/curve.hpp"
#include "revolve/expr.hpp"
#include "revolve/monotone.hpp"

namespace revolve::volume {

enum class Axis { y, x };
enum class CurveRole { y_of_x, x_of_y };
enum class Method { shell, disk, theorem1, theorem2, theorem3, piecewise, all };

std::string_view to_string(Axis a);
std::string_view to_string(CurveRole r);
std::string_view to_string(Method m);
Axis parse_axis(std::string_view s);
CurveRole parse_role(std::string_view s);
Method parse_method(std::string_view s);

struct VolumeProblem {
    expr::Expression curve;
    CurveRole role = CurveRole::y_of_x;
    Interval interval;
    Axis axis = Axis::y;
    Method method = Method::all;
    Tolerances tol;
    expr::Bindings parameters;
};

struct CrossCheck {
    std::string method;
    double value = 0.0;
    double delta = 0.0;      // |value - primary value|
    double tolerance = 0.0;  // combined tolerance the delta is held to
    bool agrees = true;
};

struct VolumeReport {
    double value = 0.0;
    std::string method;
    double error_estimate = 0.0;
    int sign_factor = 1;
    std::optional<monotone::MonotonePartition> partition;
    std::vector<CrossCheck> cross_checks;
    std::vector<std::string> warnings;
    bool converged = true;
};

/// Thrown by the solvers when a problem's fields are incompatible.
class InvalidProblem : public InputError {
public:
    using InputError::InputError;
};

/// 2 pi Int_a^b x f(x) dx. Requires a >= 0 and f >= 0 on [a, b].
VolumeReport shell_volume(const Curve& f, Interval interval, const Tolerances& tol = {});

/// pi Int_c^d g(y)^2 dy about the y-axis. With role x_of_y the curve is g
/// itself; with role y_of_x the curve is f on `domain`, strictly monotone
/// there, and g(y) is recovered per quadrature node by a bracketed Newton
/// solve seeded with the previous node's root.
VolumeReport disk_volume_y_axis(const Curve& curve, CurveRole role, Interval levels, const Tolerances& tol = {},
                                std::optional<Interval> domain = std::nullopt);

/// Mirror of disk_volume_y_axis: pi Int_a^b f(x)^2 dx about the x-axis, with
/// role x_of_y meaning the curve is g and must be inverted on `domain`.
VolumeReport disk_volume_x_axis(const Curve& curve, CurveRole role, Interval abscissae, const Tolerances& tol = {},
                                std::optional<Interval> domain = std::nullopt);

/// Alternating sum of disk volumes over the pieces of a partition, each piece
/// inverted numerically. Reduces to the inverted disk volume for one piece.
VolumeReport piecewise_disk_volume(const Curve& f, const monotone::MonotonePartition& p, const Tolerances& tol = {});

/// Sign-corrected formula for a strictly monotone, nonnegative y = f(x) on
/// [a, b] with a >= 0, rotated about the y-axis.
VolumeReport theorem1_y(const Curve& f, Interval interval, const Tolerances& tol = {});

/// Axes exchanged: x = g(y) on [c, d], rotated about the x-axis.
VolumeReport theorem1_x(const Curve& g, Interval interval, const Tolerances& tol = {});

/// The same formula for a piecewise strictly monotone curve whose bounding
/// levels each meet it once. Throws monotone::HypothesisViolation otherwise.
/// On a single monotone piece the value is bit-identical to theorem1_y.
VolumeReport theorem2_y(const Curve& f, Interval interval, const Tolerances& tol = {});

/// Axes exchanged version of theorem2_y.
VolumeReport theorem3_x(const Curve& g, Interval interval, const Tolerances& tol = {});

/// Per-piece sign-corrected volumes combined as V_0 - V_1 + V_2 - ... .
VolumeReport piecewise_signed_sum(const Curve& f, const monotone::MonotonePartition& p, const Tolerances& tol = {});

/// Runs every method applicable to the problem and records each one's
/// distance from the primary value. Disagreement becomes a warning.
VolumeReport cross_validate(const VolumeProblem& problem);

/// Runs the problem's method (cross_validate for Method::all).
VolumeReport solve(const VolumeProblem& problem);

/// Samples of the problem's curve at count + 1 uniform abscissae.
std::vector<std::pair<double, double>> sample_curve(const VolumeProblem& problem, std::size_t count);

}  // namespace revolve::volume
