#pragma once

namespace bihardy::constants {

enum class KForm { general, halfline };

struct KFactor {
    double value;
    KForm form;
};

double gamma_fn(double x);
double log_gamma(double x);
double beta_fn(double x, double y);
double log_beta(double x, double y);

// (1 + q/p')^{1/q} (1 + p'/q)^{1/p'}, p' = p/(p-1). Requires 1 < p <= q.
double k_general(double p, double q);

// Improved half-line factor for q > p, Gamma-ratio form.
double k_halfline(double p, double q);
// Same quantity through the Beta function.
double k_halfline_beta(double p, double q);

}  // namespace bihardy::constants
