#pragma once

#include <functional>
#include <string>

namespace bihardy::quad {

using Integrand = std::function<double(double)>;

enum class Classification { finite, divergent };

struct IntegralResult {
    double value = 0.0;
    double est_error = 0.0;
    Classification classification = Classification::finite;
    int subdivisions = 0;
    std::string diagnostics;

    bool finite() const { return classification == Classification::finite; }
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-150;
    int max_subdivisions = 1 << 15;
    // Split point used when both endpoints are infinite.
    double center = 0.0;
};

// Integral of a nonnegative f over [a, b]; a and b may be -inf / +inf.
// Infinite endpoints are mapped onto a unit interval by the rational map
// x = a + (1 - s)/s (mirrored on the left). Non-convergence and overflow
// are reported as Classification::divergent rather than thrown.
IntegralResult integrate(const Integrand& f, double a, double b, const Options& opt = {});

enum class Tail { integrable, nonintegrable };

// Looks at partial masses of f from `from` toward `toward` (an endpoint,
// possibly infinite) along a geometric sequence and decides whether they
// converge.
Tail divergence_probe(const Integrand& f, double toward, double from, const Options& opt = {});

}  // namespace bihardy::quad
