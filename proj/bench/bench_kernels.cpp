// Serial vs OpenMP timings for the sampling and batch Kepler inverse kernels.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "revolve/kepler.hpp"
#include "revolve/kernels.hpp"

using namespace revolve;

namespace {

template <class F>
double best_of(int reps, F&& body) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* name, std::size_t n, double serial, double parallel, bool identical) {
    std::printf("%-16s n=%-8zu serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx  %s\n", name, n, serial * 1e3,
                parallel * 1e3, serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    constexpr double two_pi = 2 * std::numbers::pi;
    std::printf("threads: %d\n", omp_get_max_threads());
    int mismatches = 0;

    for (std::size_t n : {1u << 12, 1u << 16, 1u << 20}) {
        const auto xs = kernels::uniform_grid(0.0, two_pi, n);
        auto f = [](double x) { return x / std::numbers::pi + std::sin(x) * std::exp(-0.1 * x); };
        std::vector<double> a, b;
        const double ts = best_of(5, [&] { a = kernels::serial::sample(f, xs); });
        const double tp = best_of(5, [&] { b = kernels::parallel::sample(f, xs); });
        mismatches += a != b;
        report("sample", n, ts, tp, a == b);
    }

    const kepler::KeplerCurve k(0.9);
    for (std::size_t n : {1u << 12, 1u << 16, 1u << 18}) {
        const auto xs = kernels::uniform_grid(0.0, two_pi, n);
        std::vector<double> a(xs.size()), b(xs.size());
        const double ts = best_of(3, [&] { kepler::serial::inverse_many(k, xs, a); });
        const double tp = best_of(3, [&] { kepler::parallel::inverse_many(k, xs, b); });
        mismatches += a != b;
        report("kepler_inverse", n, ts, tp, a == b);
    }
    return mismatches == 0 ? 0 : 1;
}
