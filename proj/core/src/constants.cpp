#include "bihardy/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bihardy/errors.hpp"

namespace bihardy::constants {

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kG = 7.0;
constexpr double kCoef[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                             771.32342877765313,      -176.61502916214059,   12.507343278686905,
                             -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double z) {  // z = x - 1
    double a = kCoef[0];
    for (int i = 1; i < 9; ++i) a += kCoef[i] / (z + i);
    return a;
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + " requires a positive finite argument");
}

}  // namespace

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    if (x < 0.5) return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    const double z = x - 1.0;
    const double t = z + kG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double gamma_fn(double x) {
    require_positive(x, "gamma_fn");
    if (x == std::floor(x) && x <= 171.0) {
        double f = 1.0;
        for (int i = 2; i < static_cast<int>(x); ++i) f *= i;
        return f;
    }
    if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    const double z = x - 1.0;
    const double t = z + kG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_beta(double x, double y) {
    require_positive(x, "beta_fn");
    require_positive(y, "beta_fn");
    return log_gamma(x) + log_gamma(y) - log_gamma(x + y);
}

double beta_fn(double x, double y) {
    if (x + y < 170.0) return gamma_fn(x) * gamma_fn(y) / gamma_fn(x + y);
    return std::exp(log_beta(x, y));
}

double k_general(double p, double q) {
    if (!(p > 1.0) || !(q >= p) || !std::isfinite(q))
        throw DomainError("k_general requires 1 < p <= q < inf");
    const double pc = p / (p - 1.0);
    return std::pow(1.0 + q / pc, 1.0 / q) * std::pow(1.0 + pc / q, 1.0 / pc);
}

double k_halfline(double p, double q) {
    if (!(p > 1.0) || !(q > p) || !std::isfinite(q))
        throw DomainError("k_halfline requires 1 < p < q < inf");
    const double d = q - p;
    // Arguments grow like 1/(q-p); work in logs.
    const double lg = log_gamma(p * q / d) - log_gamma(q / d) - log_gamma(p * (q - 1.0) / d);
    return std::exp((1.0 / p - 1.0 / q) * lg);
}

double k_halfline_beta(double p, double q) {
    if (!(p > 1.0) || !(q > p) || !std::isfinite(q))
        throw DomainError("k_halfline requires 1 < p < q < inf");
    const double d = q - p;
    const double lb = log_beta(q / d, p * (q - 1.0) / d);
    return std::exp((1.0 / p - 1.0 / q) * (std::log(d / (p * q)) - lb));
}

}  // namespace bihardy::constants
