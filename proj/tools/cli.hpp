#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bihardy/expr.hpp"
#include "bihardy/extended_real.hpp"
#include "bihardy/measure.hpp"

namespace bihardy::cli {

using Json = nlohmann::ordered_json;

enum class Case { vanishing, meanzero, nash, sobolev, logsobolev };

Case parse_case(const std::string& name);
const char* to_string(Case c);

struct ProblemSpec {
    Case kind = Case::vanishing;
    Endpoint left = Endpoint::finite(0.0);
    Endpoint right = Endpoint::finite(1.0);
    std::string mu = "1";
    std::string nu = "1";
    expr::ParamBindings params;
    double p = 2.0;
    double q = 2.0;
    double gamma = 0.0;           // nash / sobolev
    std::optional<double> theta;  // nash with gamma <= 2
    double k_perturbation = 1.0;  // test hook, multiplies k in the sandwich
};

// "name=value"; throws ValidationError on malformed input.
std::pair<std::string, double> parse_param(const std::string& text);

WeightedInterval make_interval(const ProblemSpec& spec);

Json to_json(const ExtendedReal& e);

// Dispatches to the bound module for spec.kind; ValidationError and
// NumericalError propagate to the caller.
Json compute(const ProblemSpec& spec);

// Independent discretized estimate of the optimal constant. method is
// "auto", "dirichlet", "neumann" or "search"; auto picks the eigenvalue
// oracle when p = q = 2 and the nonlinear search otherwise. n = 0 uses the
// oracle's default grid.
Json run_oracle(const ProblemSpec& spec, const std::string& method, int n);

struct SweepRow {
    double q = 0.0;
    ExtendedReal h_o, b_lower, b_star, upper, upper_alt;
    bool failed = false;
    std::string error;
};

// Rows for q evenly spaced over [q_from, q_to]; steps = 1 gives q_from only.
// Rows are computed concurrently and returned in q order.
std::vector<SweepRow> sweep(const ProblemSpec& spec, double q_from, double q_to, int steps);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::string render_svg(const std::vector<SweepRow>& rows, const std::string& title);

// %.17g for finite numbers, "inf", or empty for unknown / failed.
std::string csv_cell(const ExtendedReal& e);

struct Example {
    std::string key;
    std::string description;
    ProblemSpec spec;
};
const std::vector<Example>& example_registry();
const Example& find_example(const std::string& key);

}  // namespace bihardy::cli
