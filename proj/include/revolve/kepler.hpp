#pragma once

// The Kepler curve x = y - e sin(y), 0 < e < 1, as a family of implicitly
// defined strictly increasing curves with closed-form volumes.

#include <span>

#include "revolve/curve.hpp"

namespace revolve::kepler {

inline constexpr double max_eccentricity = 1.0 - 1e-6;

class KeplerCurve {
public:
    /// Throws InvalidArgument unless 0 < eccentricity <= 1 - 1e-6.
    explicit KeplerCurve(double eccentricity);

    double eccentricity() const noexcept { return eccentricity_; }

    /// x = g(y) = y - e sin(y)
    double forward(double y) const;
    double forward_slope(double y) const;

    /// y = f(x) solving y - e sin(y) = x; Newton seeded at x + e sin(x) with
    /// bisection fallback on [x - e, x + e].
    double inverse(double x, const Tolerances& tol = {}) const;
    numerics::RootResult inverse_detailed(double x, const Tolerances& tol = {}) const;

    /// Curves for the volume routines: g over y and its inverse f over x.
    Curve forward_curve() const;
    Curve inverse_curve(const Tolerances& tol = {}) const;

private:
    double eccentricity_;
};

struct ReferenceVolumes {
    double about_y;  // pi Int_0^{2 pi} g(y)^2 dy = 8 pi^4 / 3 + (4e + e^2) pi^2
    double about_x;  // pi Int_0^{2 pi} f(x)^2 dx = 8 pi^4 / 3 - 4 e pi^2
};

/// Closed forms for the region over one period, [0, 2 pi].
ReferenceVolumes reference_volumes(const KeplerCurve& k);

namespace serial {
void inverse_many(const KeplerCurve& k, std::span<const double> xs, std::span<double> ys, const Tolerances& tol = {});
}
namespace parallel {
void inverse_many(const KeplerCurve& k, std::span<const double> xs, std::span<double> ys, const Tolerances& tol = {});
}

}  // namespace revolve::kepler
