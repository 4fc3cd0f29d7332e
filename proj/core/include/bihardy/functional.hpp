#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bihardy/meanzero.hpp"
#include "bihardy/measure.hpp"
#include "bihardy/report_types.hpp"

// Nash / Sobolev-type and logarithmic Sobolev inequalities, built on the
// mean-zero machinery.
namespace bihardy::functional {

struct NashReport {
    double gamma = 0.0;
    double q = 0.0;                // 2 gamma / (gamma - 2); 0 when gamma <= 2
    ExtendedReal b_s_star;         // (mean-zero B*)^2
    ExtendedReal b_s_lower;        // (mean-zero B_*)^2
    ExtendedReal upper;            // 4 b_s_star
    ExtendedReal lower;            // b_s_lower
    Verdict verdict = Verdict::unknown;  // yes = holds, no = fails
    std::vector<std::string> diagnostics;
};

// gamma > 2 runs the mean-zero bounds at p = 2, q = 2 gamma / (gamma - 2);
// gamma <= 2 is answered by nash_small_gamma alone.
NashReport sobolev_bounds(const WeightedInterval& w, double gamma, const meanzero::Options& opt = {},
                          std::optional<double> theta = std::nullopt);

// Non-existence test for gamma in (0, 2]: every infinite end must carry
// infinite nuhat mass and mu(tail) * nuhat(theta, .) must stay bounded away
// from 0 and infinity. Returns no (fails) when this is verified, unknown
// otherwise. theta defaults to the median of mu.
struct SmallGammaResult {
    Verdict verdict = Verdict::unknown;
    double theta = 0.0;
    std::vector<std::string> notes;
};
SmallGammaResult nash_small_gamma(const WeightedInterval& w, double gamma,
                                  std::optional<double> theta = std::nullopt);

// phi(x, theta) = P log(1 + (1 - pi[-M, theta]) / P) with P = pi[-M, x];
// psi mirrors it on the right. Zero outer mass gives 0.
double logsobolev_phi(const WeightedInterval& w, double x, double theta);
double logsobolev_psi(const WeightedInterval& w, double theta, double y);

// Root z in (0, 1) of [P log(1 + z/P)]^2 (1 + z/P) = [Q log(1 + (1-z)/Q)]^2 (1 + (1-z)/Q).
double solve_zstar(double P, double Q, double tol = 1e-12);
double solve_zstar(const WeightedInterval& w, double x, double y, double tol = 1e-12);
double zstar_residual(double P, double Q, double z);

struct LogSobolevReport {
    double pi_total = 0.0;
    ExtendedReal b_star;
    ExtendedReal b_lower_full;
    ExtendedReal b_lower_median;
    ExtendedReal upper;   // 4 b_star
    ExtendedReal lower;   // b_lower_full
    SupOutcome argmax_b_star;
    SupOutcome argmax_b_lower_full;
    SupOutcome argmax_b_lower_median;
    double median = 0.0;  // median of pi
    double max_zstar_residual = 0.0;
    std::vector<std::string> diagnostics;
};

// Objectives of the two-point suprema, in terms of pi-masses P = pi[-M, x],
// Q = pi[y, N] and nuhat[x, y] at p = 2.
double ls_objective_bstar(const WeightedInterval& w, double x, double y);
double ls_objective_blower(const WeightedInterval& w, double x, double y);
double ls_objective_median(const WeightedInterval& w, double median, double x, double y);

struct LogSobolevOptions {
    int grid = 96;
    search::PairOptions pair;
};

LogSobolevReport logsobolev_bounds(const WeightedInterval& w, const LogSobolevOptions& opt = {});

}  // namespace bihardy::functional
