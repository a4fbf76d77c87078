#include "revolve/kepler.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "revolve/kernels.hpp"

namespace revolve::kepler {

KeplerCurve::KeplerCurve(double eccentricity) : eccentricity_(eccentricity) {
    if (!(eccentricity > 0.0 && eccentricity <= max_eccentricity))
        throw InvalidArgument("eccentricity must lie in (0, 1 - 1e-6], got " + std::to_string(eccentricity));
}

double KeplerCurve::forward(double y) const { return y - eccentricity_ * std::sin(y); }

double KeplerCurve::forward_slope(double y) const { return 1.0 - eccentricity_ * std::cos(y); }

numerics::RootResult KeplerCurve::inverse_detailed(double x, const Tolerances& tol) const {
    const double e = eccentricity_;
    // |y - x| = e |sin y| <= e, so [x - e, x + e] always brackets the root.
    return numerics::newton_solve([&](double y) { return forward(y) - x; }, [&](double y) { return forward_slope(y); },
                                  x + e * std::sin(x), Interval{x - e, x + e}, tol);
}

double KeplerCurve::inverse(double x, const Tolerances& tol) const { return inverse_detailed(x, tol).root; }

Curve KeplerCurve::forward_curve() const {
    const KeplerCurve k = *this;
    return Curve([k](double y) { return k.forward(y); }, [k](double y) { return k.forward_slope(y); },
                 "y - " + std::to_string(eccentricity_) + "*sin(y)");
}

Curve KeplerCurve::inverse_curve(const Tolerances& tol) const {
    const KeplerCurve k = *this;
    return Curve([k, tol](double x) { return k.inverse(x, tol); },
                 [k, tol](double x) { return 1.0 / k.forward_slope(k.inverse(x, tol)); },
                 "inverse Kepler, e = " + std::to_string(eccentricity_));
}

ReferenceVolumes reference_volumes(const KeplerCurve& k) {
    constexpr double pi = std::numbers::pi;
    const double e = k.eccentricity();
    const double base = 8.0 * pi * pi * pi * pi / 3.0;
    return {base + (4.0 * e + e * e) * pi * pi, base - 4.0 * e * pi * pi};
}

namespace serial {
void inverse_many(const KeplerCurve& k, std::span<const double> xs, std::span<double> ys, const Tolerances& tol) {
    kernels::serial::map([&](double x) { return k.inverse(x, tol); }, xs, ys);
}
}  // namespace serial

namespace parallel {
void inverse_many(const KeplerCurve& k, std::span<const double> xs, std::span<double> ys, const Tolerances& tol) {
    kernels::parallel::map([&](double x) { return k.inverse(x, tol); }, xs, ys);
}
}  // namespace parallel

}  // namespace revolve::kepler
