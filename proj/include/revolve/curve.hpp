#pragma once

#include <functional>
#include <string>

#include "revolve/expr.hpp"
#include "revolve/numerics.hpp"

namespace revolve {

using numerics::Interval;
using numerics::RealFunction;
using numerics::Tolerances;

/// A univariate curve with its derivative. Evaluation is pure and may be
/// called concurrently.
class Curve {
public:
    Curve(RealFunction value, RealFunction slope, std::string label);

    /// Compiles e and its symbolic derivative with the given parameter values.
    static Curve from_expression(const expr::Expression& e, const expr::Bindings& parameters = {});

    double operator()(double t) const { return value_(t); }
    double slope(double t) const { return slope_(t); }

    const RealFunction& value_fn() const noexcept { return value_; }
    const RealFunction& slope_fn() const noexcept { return slope_; }
    const std::string& label() const noexcept { return label_; }

private:
    RealFunction value_;
    RealFunction slope_;
    std::string label_;
};

/// Solves curve(t) = level for t inside a strictly monotone piece. The seed is
/// the chord interpolant; bisection fallback keeps the solve inside the piece.
double invert_on_piece(const Curve& curve, Interval piece, double level, const Tolerances& tol, double seed);
double invert_on_piece(const Curve& curve, Interval piece, double level, const Tolerances& tol);

/// The inverse of a curve that is strictly monotone on `domain`, as a curve
/// over the value range. Each evaluation is one bracketed Newton solve.
Curve inverse_curve(const Curve& curve, Interval domain, const Tolerances& tol);

}  // namespace revolve
