#include "revolve/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "revolve/kernels.hpp"

namespace revolve::monotone {

namespace {

void require_proper(Interval iv) {
    if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
        throw InvalidArgument("interval must be finite with lo < hi");
}

std::string format_list(const std::vector<double>& xs) {
    std::ostringstream os;
    os.precision(12);
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
    return os.str();
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::increasing ? "increasing" : "decreasing"; }

std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::endpoint_values_equal: return "endpoint-values-equal";
        case Rule::negative_curve: return "negative-curve";
        case Rule::multiple_intersection: return "multiple-intersection";
        case Rule::alternation: return "alternation";
    }
    return "unknown";
}

void MonotonePartition::check_alternation() const {
    if (directions.empty() || breakpoints.size() != directions.size() + 1 ||
        extremum_values.size() + 1 != directions.size())
        throw AlternationViolation("partition sizes are inconsistent");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1])) throw AlternationViolation("breakpoints are not increasing");
    for (std::size_t i = 1; i < directions.size(); ++i) {
        if (directions[i] == directions[i - 1]) {
            std::ostringstream os;
            os.precision(12);
            os << "pieces meeting at x = " << breakpoints[i] << " are both " << to_string(directions[i]);
            throw AlternationViolation(os.str());
        }
    }
}

std::vector<double> critical_points(const Curve& f, Interval interval, const Tolerances& tol, std::size_t grid_n) {
    require_proper(interval);
    const auto brackets = numerics::scan_sign_changes(f.slope_fn(), interval.lo, interval.hi, grid_n);
    std::vector<double> roots;
    for (const auto& br : brackets) {
        const double x = numerics::find_root_bracketed(f.slope_fn(), br.lo, br.hi, tol).root;
        if (x - interval.lo <= tol.abs_tol || interval.hi - x <= tol.abs_tol) continue;
        if (!roots.empty() && x - roots.back() <= tol.abs_tol) continue;
        roots.push_back(x);
    }
    return roots;
}

MonotonePartition partition(const Curve& f, Interval interval, const Tolerances& tol, std::size_t grid_n) {
    const auto interior = critical_points(f, interval, tol, grid_n);
    MonotonePartition p;
    p.breakpoints.push_back(interval.lo);
    p.breakpoints.insert(p.breakpoints.end(), interior.begin(), interior.end());
    p.breakpoints.push_back(interval.hi);
    for (double x : interior) p.extremum_values.push_back(f(x));
    for (std::size_t i = 0; i + 1 < p.breakpoints.size(); ++i) {
        const Interval piece = p.piece(i);
        double s = f.slope(piece.midpoint());
        if (s == 0.0) s = f(piece.hi) - f(piece.lo);
        p.directions.push_back(s > 0.0 ? Direction::increasing : Direction::decreasing);
    }
    p.check_alternation();
    return p;
}

bool check_lemma1(const MonotonePartition& p, double f_a, double f_b) {
    if (f_a == f_b) throw PreconditionViolated("boundary values are equal");
    const double lo = std::min(f_a, f_b), hi = std::max(f_a, f_b);
    for (std::size_t i = 0; i < p.extremum_values.size(); ++i) {
        const double v = p.extremum_values[i];
        if (!(v > lo && v < hi)) {
            std::ostringstream os;
            os.precision(12);
            os << "extremum value " << v << " at x = " << p.breakpoints.at(i + 1) << " is outside (" << lo << ", "
               << hi << ")";
            throw PreconditionViolated(os.str());
        }
    }
    const std::size_t n = p.interior_count();
    if (n % 2 != 0) return false;
    if (n == 0) return true;
    // Rising overall: the extremum nearest a is a maximum, the one nearest b a
    // minimum, so the first and last pieces both rise. Mirrored when falling.
    const Direction outer = f_a < f_b ? Direction::increasing : Direction::decreasing;
    return p.directions.front() == outer && p.directions.back() == outer;
}

std::vector<double> level_crossings(const Curve& f, const MonotonePartition& p, double level,
                                    const Tolerances& tol) {
    std::vector<double> xs;
    auto add = [&](double x) {
        if (xs.empty() || x - xs.back() > tol.abs_tol) xs.push_back(x);
    };
    const double slack = std::max(tol.abs_tol, tol.rel_tol * std::abs(level));
    auto touches = [&](double x) { return std::abs(f(x) - level) <= slack; };
    for (std::size_t i = 0; i < p.piece_count(); ++i) {
        const Interval piece = p.piece(i);
        const bool at_lo = touches(piece.lo);
        const bool at_hi = touches(piece.hi);
        if (at_lo) add(piece.lo);
        if (!at_lo && !at_hi && (f(piece.lo) < level) != (f(piece.hi) < level))
            add(numerics::find_root_bracketed([&](double x) { return f(x) - level; }, piece.lo, piece.hi, tol).root);
        if (i + 1 == p.piece_count() && at_hi) add(piece.hi);
    }
    return xs;
}

HypothesisReport validate_revolution_hypotheses(const Curve& f, Interval interval, const Tolerances& tol,
                                                std::size_t grid_n) {
    require_proper(interval);
    HypothesisReport report;
    const double f_a = f(interval.lo);
    const double f_b = f(interval.hi);
    report.c = std::min(f_a, f_b);
    report.d = std::max(f_a, f_b);

    if (std::abs(f_b - f_a) <= std::max(tol.abs_tol, tol.rel_tol * std::max(std::abs(f_a), std::abs(f_b)))) {
        std::ostringstream os;
        os.precision(12);
        os << "f(a) = " << f_a << " and f(b) = " << f_b << " coincide; the bounding levels degenerate";
        report.violations.push_back({Rule::endpoint_values_equal, interval.hi, os.str()});
    }

    try {
        report.partition = partition(f, interval, tol, grid_n);
    } catch (const AlternationViolation& e) {
        report.violations.push_back({Rule::alternation, interval.lo, e.what()});
    }

    {
        auto xs = kernels::uniform_grid(interval.lo, interval.hi, default_nonnegativity_grid);
        if (report.partition) {
            const auto& bp = report.partition->breakpoints;
            xs.insert(xs.end(), bp.begin() + 1, bp.end() - 1);
        }
        const auto ys = kernels::parallel::sample(f.value_fn(), xs);
        for (double y : ys)
            if (!std::isfinite(y)) throw NonFiniteEvaluation(kernels::min_sample(xs, ys).x);
        const auto lowest = kernels::min_sample(xs, ys);
        if (lowest.value < -nonnegativity_slack) {
            std::ostringstream os;
            os.precision(12);
            os << "curve value " << lowest.value << " is negative";
            report.violations.push_back({Rule::negative_curve, lowest.x, os.str()});
        }
    }

    if (report.partition) {
        const auto& p = *report.partition;
        for (std::size_t i = 0; i < p.interior_count(); ++i) {
            const double v = p.extremum_values[i];
            if (v > report.c && v < report.d) continue;
            const double level = v >= report.d ? report.d : report.c;
            const auto hits = level_crossings(f, p, level, tol);
            double where = p.breakpoints[i + 1];
            for (double x : hits)
                if (x != interval.lo && x != interval.hi) {
                    where = x;
                    break;
                }
            std::ostringstream os;
            os.precision(12);
            os << "level " << level << " meets the curve at " << hits.size() << " points (" << format_list(hits)
               << "); extremum value " << v << " at " << p.breakpoints[i + 1] << " is outside (" << report.c
               << ", " << report.d << ")";
            report.violations.push_back({Rule::multiple_intersection, where, os.str()});
            break;
        }
    }

    report.satisfied = report.violations.empty();
    return report;
}

HypothesisViolation::HypothesisViolation(HypothesisReport report)
    : HypothesisError([&] {
          std::string msg = "revolution hypotheses violated";
          for (const auto& v : report.violations) msg += "; " + std::string(to_string(v.rule)) + ": " + v.detail;
          return msg;
      }()),
      report_(std::move(report)) {}

}  // namespace revolve::monotone
