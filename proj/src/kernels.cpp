#include "revolve/kernels.hpp"

#include <exception>
#include <limits>
#include <stdexcept>

namespace revolve::kernels {

std::vector<double> uniform_grid(double a, double b, std::size_t cells) {
    if (cells == 0) throw std::invalid_argument("uniform_grid: zero cells");
    std::vector<double> xs(cells + 1);
    const double h = (b - a) / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) xs[i] = a + static_cast<double>(i) * h;
    xs[cells] = b;
    return xs;
}

Sample min_sample(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("min_sample: size mismatch");
    std::size_t best = 0;
    for (std::size_t i = 1; i < ys.size(); ++i)
        if (ys[i] < ys[best]) best = i;
    return {xs[best], ys[best]};
}

namespace serial {

void map(const RealFunction& f, std::span<const double> xs, std::span<double> out) {
    if (xs.size() != out.size()) throw std::invalid_argument("map: size mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
}

std::vector<double> sample(const RealFunction& f, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    map(f, xs, out);
    return out;
}

}  // namespace serial

namespace parallel {

void map(const RealFunction& f, std::span<const double> xs, std::span<double> out) {
    if (xs.size() != out.size()) throw std::invalid_argument("map: size mismatch");
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    std::ptrdiff_t failed_at = std::numeric_limits<std::ptrdiff_t>::max();
    std::exception_ptr failure;

#pragma omp parallel for schedule(static) if (n >= 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (...) {
#pragma omp critical(revolve_kernel_failure)
            if (i < failed_at) {
                failed_at = i;
                failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> sample(const RealFunction& f, std::span<const double> xs) {
    std::vector<double> out(xs.size());
    map(f, xs, out);
    return out;
}

}  // namespace parallel

}  // namespace revolve::kernels
