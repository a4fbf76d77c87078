#pragma once

// Data-parallel sampling kernels. Every kernel has a serial reference in
// `serial` and an OpenMP version in `parallel`; the two produce identical
// output element for element.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace revolve::kernels {

using RealFunction = std::function<double(double)>;

/// cells + 1 abscissae a + i (b - a) / cells, with the last one exactly b.
std::vector<double> uniform_grid(double a, double b, std::size_t cells);

struct Sample {
    double x = 0.0;
    double value = 0.0;
};

/// Smallest value of ys (first occurrence), paired with its abscissa.
Sample min_sample(std::span<const double> xs, std::span<const double> ys);

namespace serial {
void map(const RealFunction& f, std::span<const double> xs, std::span<double> out);
std::vector<double> sample(const RealFunction& f, std::span<const double> xs);
}  // namespace serial

namespace parallel {
// f must be safe to call concurrently. If any call throws, the exception from
// the lowest index is rethrown after the loop.
void map(const RealFunction& f, std::span<const double> xs, std::span<double> out);
std::vector<double> sample(const RealFunction& f, std::span<const double> xs);
}  // namespace parallel

}  // namespace revolve::kernels
