#pragma once

#include <string>
#include <vector>

#include "bihardy/measure.hpp"
#include "bihardy/report_types.hpp"
#include "bihardy/search.hpp"

// Bounds for the Hardy inequality with f vanishing at both endpoints:
// ||f||_{q,mu} <= A ||f'||_{p,nu}.
namespace bihardy::vanishing {

struct BoundReport {
    double p = 2.0;
    double q = 2.0;
    ExtendedReal b_star;
    ExtendedReal b_lower;
    ExtendedReal h_o;
    ExtendedReal h_partial;
    double k = 1.0;             // k_general(p, q)
    double k_alt = 1.0;         // k_general(p, p), for upper_alt
    double k_halfline = 0.0;    // informational; 0 when q == p
    ExtendedReal lower;         // = b_lower
    ExtendedReal upper;         // = k * b_star
    ExtendedReal upper_alt;     // = k_alt * b_lower
    Verdict holds = Verdict::unknown;
    bool nuhat_finite = true;   // finite total nuhat mass; H^o path disabled otherwise
    SupOutcome argmax_b_star;
    SupOutcome argmax_b_lower;
    double h_o_argmax = 0.0;
    std::vector<std::string> diagnostics;
};

struct Options {
    int grid = 96;
    search::PairOptions pair;
    // Multiplies k; a test hook for mutation checks of the sandwich.
    double k_perturbation = 1.0;
};

double objective_bstar(const WeightedInterval& w, double p, double q, double x, double y);
double objective_blower(const WeightedInterval& w, double p, double q, double x, double y);

SupOutcome compute_b_star(const WeightedInterval& w, double p, double q, const Options& opt = {});
SupOutcome compute_b_lower(const WeightedInterval& w, double p, double q, const Options& opt = {});
CurveOutcome compute_h_o(const WeightedInterval& w, double p, double q, const Options& opt = {});
search::BoundaryResult compute_h_partial(const WeightedInterval& w, double p, double q,
                                         const Options& opt = {});

BoundReport vanishing_report(const WeightedInterval& w, double p, double q, const Options& opt = {});

}  // namespace bihardy::vanishing
