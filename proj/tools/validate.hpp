#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bihardy::validate {

struct Options {
    std::string filter;           // family key, "criterion-N", or empty for all
    double k_perturbation = 1.0;  // mutation hook: multiplies every k factor
    std::uint64_t seed = 12345;   // randomized batches
    int property_cases = 100;
    int logsobolev_cases = 25;
};

struct CriterionResult {
    int id = 0;
    std::string family;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Criterion {
    int id;
    std::string family;
    std::string title;
    std::function<CriterionResult(const Options&)> run;
};

const std::vector<Criterion>& criteria();

bool matches(const Criterion& c, const std::string& filter);

// Runs the selected criteria; exceptions become failures with the message.
std::vector<CriterionResult> run(const Options& opt);
CriterionResult run_one(const Criterion& c, const Options& opt);

std::string format_line(const CriterionResult& r);

}  // namespace bihardy::validate
