#pragma once

#include <string>
#include <vector>

#include "bihardy/measure.hpp"
#include "bihardy/report_types.hpp"
#include "bihardy/search.hpp"

// Bounds for the mean-zero (Poincare-type) inequality
// ||f - pi(f)||_{q,mu} <= A ||f'||_{p,nu} with pi = mu / mu(total).
namespace bihardy::meanzero {

struct MeanZeroReport {
    double p = 2.0;
    double q = 2.0;
    double pi_total = 0.0;     // total mu mass
    ExtendedReal b_star;
    ExtendedReal b_lower;
    ExtendedReal h_o;
    ExtendedReal h_partial;
    double k = 0.0;            // k_general(p, 2); 0 when the upper bound does not apply
    ExtendedReal lower;        // = b_lower
    ExtendedReal upper;        // = k * b_star, only for 1 < p <= 2 <= q
    bool upper_valid = false;
    std::string upper_note;
    Verdict holds = Verdict::unknown;
    SupOutcome argmax_b_star;
    SupOutcome argmax_b_lower;
    double h_o_argmax = 0.0;
    std::vector<std::string> diagnostics;
};

struct Options {
    int grid = 96;
    search::PairOptions pair;
    double k_perturbation = 1.0;
};

double objective_blower_mz(const WeightedInterval& w, double p, double q, double x, double y);
double objective_bstar_mz(const WeightedInterval& w, double p, double q, double x, double y);

CurveOutcome compute_h_o_mz(const WeightedInterval& w, double p, double q, const Options& opt = {});
search::BoundaryResult compute_h_partial_mz(const WeightedInterval& w, double p, double q,
                                            const Options& opt = {});
SupOutcome compute_b_star_mz(const WeightedInterval& w, double p, double q, const Options& opt = {});
SupOutcome compute_b_lower_mz(const WeightedInterval& w, double p, double q, const Options& opt = {});

MeanZeroReport compute_mz_bounds(const WeightedInterval& w, double p, double q, const Options& opt = {});

}  // namespace bihardy::meanzero
