#include "revolve/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace revolve::numerics {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae (positive half, descending) and weights; the odd-indexed
// abscissae and the centre are the 7-point Gauss nodes.
constexpr std::array<double, 8> xgk = {
    0x1.fba009d4d09b1p-1, 0x1.e5f178e7c6229p-1, 0x1.bacf827b9bb3ep-1, 0x1.7ba9f9be3a1d6p-1,
    0x1.2c13a049dfa24p-1, 0x1.9f95df119fd62p-2, 0x1.a98b2892e0c77p-3, 0x0.0p+0,
};
constexpr std::array<double, 8> wgk = {
    0x1.77c5b67d57470p-6, 0x1.026cdaa7b61c4p-4, 0x1.ad384a34814c6p-4, 0x1.200ed0f46e8c1p-3,
    0x1.5a1f266e47d5cp-3, 0x1.85d6861c80eb1p-3, 0x1.a2adbcbec9cd8p-3, 0x1.ad04f9087090fp-3,
};
constexpr std::array<double, 4> wg = {
    0x1.092f69f826d57p-3, 0x1.1e6b1713d8644p-2, 0x1.86fe74ee32b3dp-2, 0x1.abfd7e03c2fa6p-2,
};

// Upper bound on panels held by the adaptive integrator.
constexpr std::size_t max_panels = 4096;

double checked(const RealFunction& f, double x) {
    double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteEvaluation(x);
    return v;
}

double allowed_error(const Tolerances& tol, double value) {
    return std::max(tol.abs_tol, tol.rel_tol * std::abs(value));
}

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    int depth;
};

struct WorseFirst {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;
    }
};

bool same_sign(double a, double b) { return std::signbit(a) == std::signbit(b); }

}  // namespace

void Tolerances::validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0) || !(residual_tol > 0) || max_depth < 1 || max_iter < 1)
        throw InvalidArgument("tolerances must be strictly positive and max_depth >= 1");
}

std::string_view to_string(RootMethod m) {
    switch (m) {
        case RootMethod::bracketed: return "bracketed";
        case RootMethod::newton: return "newton";
        case RootMethod::newton_with_bisection_fallback: return "newton-with-bisection-fallback";
    }
    return "unknown";
}

QuadratureResult gauss_kronrod_panel(const RealFunction& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    std::array<double, 7> fv1{}, fv2{};
    const double fc = checked(f, centre);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::abs(resk);

    for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t k = 2 * j + 1;
        const double dx = half * xgk[k];
        const double f1 = checked(f, centre - dx);
        const double f2 = checked(f, centre + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        resg += wg[j] * (f1 + f2);
        resk += wgk[k] * (f1 + f2);
        resabs += wgk[k] * (std::abs(f1) + std::abs(f2));
    }
    for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t k = 2 * j;
        const double dx = half * xgk[k];
        const double f1 = checked(f, centre - dx);
        const double f2 = checked(f, centre + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        resk += wgk[k] * (f1 + f2);
        resabs += wgk[k] * (std::abs(f1) + std::abs(f2));
    }

    const double mean = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

    resabs *= abs_half;
    resasc *= abs_half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

    return {resk * half, err, 15, true};
}

QuadratureResult integrate(const RealFunction& f, double a, double b, const Tolerances& tol) {
    tol.validate();
    if (!(a <= b)) throw InvalidArgument("integrate: requires a <= b");
    if (a == b) return {0.0, 0.0, 0, true};

    std::priority_queue<Panel, std::vector<Panel>, WorseFirst> heap;
    QuadratureResult whole = gauss_kronrod_panel(f, a, b);
    std::size_t evaluations = whole.evaluations;
    heap.push({a, b, whole.value, whole.error_estimate, 0});
    double total = whole.value;
    double total_err = whole.error_estimate;

    while (total_err > allowed_error(tol, total)) {
        const Panel worst = heap.top();
        if (worst.depth >= tol.max_depth || heap.size() >= max_panels) break;
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        QuadratureResult left = gauss_kronrod_panel(f, worst.lo, mid);
        QuadratureResult right = gauss_kronrod_panel(f, mid, worst.hi);
        evaluations += left.evaluations + right.evaluations;
        total += (left.value + right.value) - worst.value;
        total_err += (left.error_estimate + right.error_estimate) - worst.error;
        heap.push({worst.lo, mid, left.value, left.error_estimate, worst.depth + 1});
        heap.push({mid, worst.hi, right.value, right.error_estimate, worst.depth + 1});
    }

    // Re-sum in abscissa order so the reported value does not carry the
    // running-update drift.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    double value = 0.0, error = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        error += p.error;
    }
    return {value, error, evaluations, error <= allowed_error(tol, value)};
}

RootResult find_root_bracketed(const RealFunction& f, double lo, double hi, const Tolerances& tol) {
    return find_root_bracketed(f, lo, hi, tol, nullptr);
}

RootResult find_root_bracketed(const RealFunction& f, double lo, double hi, const Tolerances& tol,
                               const BracketObserver& observe) {
    tol.validate();
    if (lo > hi) std::swap(lo, hi);
    double a = lo, b = hi;
    double fa = checked(f, a), fb = checked(f, b);
    if (fa == 0.0) return {a, 0.0, 0, RootMethod::bracketed};
    if (fb == 0.0) return {b, 0.0, 0, RootMethod::bracketed};
    if (same_sign(fa, fb)) {
        std::ostringstream os;
        os.precision(17);
        os << "no sign change on [" << lo << ", " << hi << "]";
        throw NoSignChange(os.str());
    }

    double c = b, fc = fb;
    double d = b - a, e = d;
    for (int iter = 1; iter <= tol.max_iter; ++iter) {
        if (same_sign(fb, fc)) {
            // b and c must straddle the root
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        if (observe) observe(b, fb, c, fc);
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol.abs_tol;
        const double m = 0.5 * (c - b);
        if (fb == 0.0 || std::abs(fb) <= tol.residual_tol || std::abs(m) <= tol1)
            return {b, fb, iter, RootMethod::bracketed};

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic interpolation, or secant when only two points
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (m > 0 ? tol1 : -tol1);
        fb = checked(f, b);
    }
    throw MaxIterExceeded("find_root_bracketed: iteration limit reached");
}

std::vector<Interval> scan_sign_changes(const RealFunction& f, double a, double b, std::size_t grid_n) {
    if (grid_n < 2) throw InvalidArgument("scan_sign_changes: grid_n must be at least 2");
    if (!(a < b)) throw InvalidArgument("scan_sign_changes: requires a < b");
    const double h = (b - a) / static_cast<double>(grid_n);
    auto abscissa = [&](std::size_t i) { return i == grid_n ? b : a + static_cast<double>(i) * h; };

    std::vector<Interval> brackets;
    std::optional<std::size_t> last_nonzero;
    double last_value = 0.0;
    for (std::size_t i = 0; i <= grid_n; ++i) {
        const double x = abscissa(i);
        const double v = checked(f, x);
        if (v == 0.0) continue;
        if (last_nonzero && !same_sign(v, last_value)) brackets.push_back({abscissa(*last_nonzero), x});
        last_nonzero = i;
        last_value = v;
    }
    return brackets;
}

RootResult newton_solve(const RealFunction& f, const RealFunction& fprime, double x0,
                        std::optional<Interval> bracket, const Tolerances& tol) {
    tol.validate();
    constexpr double flat_slope = 1e-14;
    bool bisected = false;
    double lo = 0.0, hi = 0.0, flo = 0.0;

    if (bracket) {
        lo = std::min(bracket->lo, bracket->hi);
        hi = std::max(bracket->lo, bracket->hi);
        flo = checked(f, lo);
        const double fhi = checked(f, hi);
        if (std::abs(flo) <= tol.residual_tol) return {lo, flo, 0, RootMethod::newton};
        if (std::abs(fhi) <= tol.residual_tol) return {hi, fhi, 0, RootMethod::newton};
        if (same_sign(flo, fhi)) throw NoSignChange("newton_solve: bracket has no sign change");
        x0 = std::clamp(x0, lo, hi);
    }

    double x = x0;
    for (int iter = 1; iter <= tol.max_iter; ++iter) {
        const double fx = checked(f, x);
        if (std::abs(fx) <= tol.residual_tol)
            return {x, fx, iter, bisected ? RootMethod::newton_with_bisection_fallback : RootMethod::newton};

        if (bracket) {
            if (same_sign(fx, flo)) {
                lo = x;
                flo = fx;
            } else {
                hi = x;
            }
        }

        const double slope = fprime(x);
        double next = x - fx / slope;
        const bool usable = std::isfinite(slope) && std::abs(slope) >= flat_slope && std::isfinite(next);

        if (bracket) {
            if (!usable || !(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
                bisected = true;
            }
            if (next <= lo || next >= hi) {
                // bracket has collapsed to adjacent doubles
                throw MaxIterExceeded("newton_solve: bracket exhausted above residual tolerance");
            }
        } else {
            if (!usable) throw DivergedWithoutBracket("newton_solve: flat or non-finite derivative");
            if (next == x) throw MaxIterExceeded("newton_solve: stagnated above residual tolerance");
        }
        x = next;
    }
    throw MaxIterExceeded("newton_solve: iteration limit reached");
}

}  // namespace revolve::numerics
