#pragma once

// Adaptive quadrature and scalar root finding with explicit accuracy
// contracts. All routines are deterministic: identical inputs give
// bit-identical results.

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "revolve/error.hpp"

namespace revolve::numerics {

using RealFunction = std::function<double(double)>;

struct Tolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double residual_tol = 1e-12;
    int max_depth = 50;
    int max_iter = 100;

    /// Throws InvalidArgument unless every field is strictly positive.
    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const noexcept { return hi - lo; }
    double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

enum class RootMethod { bracketed, newton, newton_with_bisection_fallback };

std::string_view to_string(RootMethod m);

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    RootMethod method_used = RootMethod::bracketed;
};

/// Globally adaptive Gauss-Kronrod 7-15 quadrature over [a, b], a <= b.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate is within max(abs_tol, rel_tol * |value|). A panel that would
/// need splitting beyond max_depth halvings ends the refinement with
/// converged = false and the best estimate so far. A non-finite integrand
/// value throws NonFiniteEvaluation.
QuadratureResult integrate(const RealFunction& f, double a, double b, const Tolerances& tol = {});

/// Single 15-point Kronrod panel; exposed for the polynomial exactness tests.
QuadratureResult gauss_kronrod_panel(const RealFunction& f, double a, double b);

/// Brent's method on a bracket with a strict sign change.
RootResult find_root_bracketed(const RealFunction& f, double lo, double hi, const Tolerances& tol = {});

/// Called once per iteration with the current bracket ends and their values.
using BracketObserver = std::function<void(double x1, double f1, double x2, double f2)>;
RootResult find_root_bracketed(const RealFunction& f, double lo, double hi, const Tolerances& tol,
                               const BracketObserver& observe);

/// Brackets [x_i, x_k] of consecutive nonzero samples of opposite sign on a
/// uniform grid of grid_n cells. Exact zeros are skipped, so a sign change
/// through a sampled zero yields one bracket spanning it, and a zero with no
/// sign change yields none.
std::vector<Interval> scan_sign_changes(const RealFunction& f, double a, double b, std::size_t grid_n = 1024);

/// Newton iteration. With a bracket, a step that leaves it or a derivative
/// below 1e-14 in magnitude is replaced by a bisection step; without one such
/// steps throw DivergedWithoutBracket.
RootResult newton_solve(const RealFunction& f, const RealFunction& fprime, double x0,
                        std::optional<Interval> bracket, const Tolerances& tol = {});

}  // namespace revolve::numerics
