#include "revolve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace revolve {

Curve::Curve(RealFunction value, RealFunction slope, std::string label)
    : value_(std::move(value)), slope_(std::move(slope)), label_(std::move(label)) {}

Curve Curve::from_expression(const expr::Expression& e, const expr::Bindings& parameters) {
    auto value = std::make_shared<const expr::CompiledExpression>(e, parameters);
    auto slope = std::make_shared<const expr::CompiledExpression>(expr::differentiate(e), parameters);
    return Curve([value](double t) { return (*value)(t); }, [slope](double t) { return (*slope)(t); },
                 expr::print(e));
}

double invert_on_piece(const Curve& curve, Interval piece, double level, const Tolerances& tol, double seed) {
    auto residual = [&](double t) { return curve(t) - level; };
    auto slope = [&](double t) { return curve.slope(t); };
    return numerics::newton_solve(residual, slope, seed, piece, tol).root;
}

double invert_on_piece(const Curve& curve, Interval piece, double level, const Tolerances& tol) {
    const double v_lo = curve(piece.lo);
    const double v_hi = curve(piece.hi);
    double seed = piece.midpoint();
    if (v_hi != v_lo) seed = piece.lo + (level - v_lo) / (v_hi - v_lo) * piece.width();
    return invert_on_piece(curve, piece, level, tol, std::clamp(seed, piece.lo, piece.hi));
}

Curve inverse_curve(const Curve& curve, Interval domain, const Tolerances& tol) {
    auto value = [curve, domain, tol](double level) { return invert_on_piece(curve, domain, level, tol); };
    auto slope = [curve, domain, tol](double level) {
        return 1.0 / curve.slope(invert_on_piece(curve, domain, level, tol));
    };
    return Curve(value, slope, "inverse of " + curve.label());
}

}  // namespace revolve
