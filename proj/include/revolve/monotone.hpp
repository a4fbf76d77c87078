#pragma once

// Decomposition of a curve into strictly monotone pieces, the parity check on
// interior extrema, and the single-intersection hypotheses under which the
// sign-corrected volume formula holds for non-monotone curves.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revolve/curve.hpp"
#include "revolve/error.hpp"

namespace revolve::monotone {

enum class Direction { increasing, decreasing };

std::string_view to_string(Direction d);

struct MonotonePartition {
    std::vector<double> breakpoints;      // x_0 = a < x_1 < ... < x_{n+1} = b
    std::vector<Direction> directions;    // one per piece
    std::vector<double> extremum_values;  // curve value at x_1 .. x_n

    std::size_t interior_count() const noexcept { return extremum_values.size(); }
    std::size_t piece_count() const noexcept { return directions.size(); }
    Interval piece(std::size_t i) const { return {breakpoints.at(i), breakpoints.at(i + 1)}; }

    /// Throws AlternationViolation unless directions alternate and the sizes
    /// line up.
    void check_alternation() const;
};

inline constexpr std::size_t default_derivative_grid = 1024;
inline constexpr std::size_t default_nonnegativity_grid = 4096;
inline constexpr double nonnegativity_slack = 1e-12;

/// Interior points where the derivative changes sign, refined by Brent's
/// method, ascending, deduplicated within abs_tol. Zeros of the derivative
/// without a sign change are not extrema and are not reported.
std::vector<double> critical_points(const Curve& f, Interval interval, const Tolerances& tol = {},
                                    std::size_t grid_n = default_derivative_grid);

MonotonePartition partition(const Curve& f, Interval interval, const Tolerances& tol = {},
                            std::size_t grid_n = default_derivative_grid);

/// True iff the interior extremum count is even and the extrema nearest the
/// ends have the kind forced by the boundary values (a maximum next to the
/// lower end value, a minimum next to the higher one). Throws
/// PreconditionViolated when f_a == f_b or an extremum value leaves the open
/// range between f_a and f_b.
bool check_lemma1(const MonotonePartition& p, double f_a, double f_b);

enum class Rule {
    endpoint_values_equal,
    negative_curve,
    multiple_intersection,
    alternation,
};

std::string_view to_string(Rule r);

struct Violation {
    Rule rule;
    double location;
    std::string detail;
};

struct HypothesisReport {
    bool satisfied = false;
    double c = 0.0;  // min(f(a), f(b))
    double d = 0.0;  // max(f(a), f(b))
    std::vector<Violation> violations;
    std::optional<MonotonePartition> partition;
};

/// Never throws for a violated hypothesis; violations are listed instead.
HypothesisReport validate_revolution_hypotheses(const Curve& f, Interval interval, const Tolerances& tol = {},
                                                std::size_t grid_n = default_derivative_grid);

/// Abscissae in `interval` where the curve takes the value `level`, found
/// piece by piece on the partition.
std::vector<double> level_crossings(const Curve& f, const MonotonePartition& p, double level,
                                    const Tolerances& tol = {});

class HypothesisViolation : public HypothesisError {
public:
    explicit HypothesisViolation(HypothesisReport report);

    const HypothesisReport& report() const noexcept { return report_; }

private:
    HypothesisReport report_;
};

}  // namespace revolve::monotone
