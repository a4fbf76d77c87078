#pragma once

// Curve fixtures shared by the unit and acceptance suites.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "revolve/expr.hpp"

namespace fixtures {

constexpr double pi = std::numbers::pi;

struct CurveFixture {
    std::string source;
    std::string variable;
    std::vector<std::pair<std::string, double>> parameters;
    double lo;
    double hi;

    revolve::expr::Expression parse() const {
        revolve::expr::ParseOptions options{variable, {}};
        for (const auto& [k, v] : parameters) options.parameters.insert(k);
        return revolve::expr::parse(source, options);
    }

    revolve::expr::Bindings parameter_bindings() const {
        revolve::expr::Bindings b;
        for (const auto& [k, v] : parameters) b.set(k, v);
        return b;
    }
};

inline std::vector<CurveFixture> expression_corpus() {
    return {
        {"x/pi + sin(x)", "x", {}, 0.0, 2 * pi},
        {"2 - x/pi - sin(x)", "x", {}, 0.0, 2 * pi},
        {"y - eps*sin(y)", "y", {{"eps", 0.5}}, 0.0, 2 * pi},
        {"y/pi + sin(y)", "y", {}, 0.0, 2 * pi},
        {"1 + sin(x)", "x", {}, 0.0, 3 * pi / 2},
        {"x", "x", {}, 1.0, 2.0},
        {"3 - x", "x", {}, 1.0, 2.0},
        {"x^2", "x", {}, 1.0, 2.0},
        {"x^3 - 2*x^2 + 1.5*x + 0.2", "x", {}, 0.1, 5.0},
        {"arccos(x/2)", "x", {}, -1.5, 1.5},
        {"sqrt(x + 1)", "x", {}, 0.0, 4.0},
        {"x*cos(x)^2/(1 + x^2)", "x", {}, 0.0, 3.0},
        {"(x + 1)^-0.5", "x", {}, 0.0, 3.0},
        {"-x^2 + 4", "x", {}, 0.0, 2.0},
        {"2*sin(x) + sin(3*x)/3 + 0.1*x", "x", {}, 0.0, 2 * pi},
        {"cos(a*x)*sqrt(2 + sin(x))", "x", {{"a", 1.5}}, 0.0, 4.0},
    };
}

/// Trig-polynomial curves with their intervals, used for the parity property.
inline std::vector<CurveFixture> trig_polynomials() {
    return {
        {"x/pi + sin(x)", "x", {}, 0.0, 2 * pi},
        {"2 - x/pi - sin(x)", "x", {}, 0.0, 2 * pi},
        {"x/pi + 0.5*sin(2*x)", "x", {}, 0.0, 2 * pi},
        {"x/pi + 0.3*sin(3*x) + 0.2", "x", {}, 0.0, 2 * pi},
        {"0.5*x + sin(x) + 0.3*cos(2*x) + 1", "x", {}, 0.0, 4 * pi},
        {"1 + sin(x)", "x", {}, 0.0, 3 * pi / 2},
        {"2 + sin(x) + 0.5*sin(2*x)", "x", {}, 0.0, 2 * pi},
        {"x/4 + 0.2*cos(5*x)", "x", {}, 0.5, 6.0},
        {"3 + cos(x)", "x", {}, 0.0, pi},
        {"1 + x/10 + cos(x)^2", "x", {}, 0.0, 3 * pi},
        {"x", "x", {}, 1.0, 2.0},
    };
}

}  // namespace fixtures
