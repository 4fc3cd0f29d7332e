#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bihardy/extended_real.hpp"
#include "bihardy/measure.hpp"

// Supremum machinery shared by the bound modules: grid + Nelder-Mead over
// pairs x <= y, a 1-D maximizer, and limit probes toward endpoints.
namespace bihardy::search {

enum class LimitClass { zero, finite, infinite, unknown };

const char* to_string(LimitClass c);

struct LimitProbe {
    std::vector<std::pair<double, double>> samples;
    LimitClass cls = LimitClass::unknown;
    double limit = 0.0;
    std::string direction;
    // Limit known to be finite even when unclassified (nonincreasing tail);
    // `limit` then holds the last sample, an upper bound.
    bool bounded = false;

    ExtendedReal as_extended() const;
};

// Samples g along a geometric sequence from `from` toward `toward` (ratio 2,
// `terms` points; distances halve toward a finite endpoint) and classifies
// the limit. Toward a finite endpoint sampling stops once the distance drops
// below end_floor * max(|toward|, |toward - from|).
LimitProbe probe_limit(const std::function<double(double)>& g, double from, double toward,
                       int terms = 40, double end_floor = 1e-6);

// Classification of an already-sampled sequence.
LimitProbe classify_samples(std::vector<std::pair<double, double>> samples);

struct PairOptions {
    int starts = 5;
    int max_evals = 4000;
};

struct PairResult {
    double value = 0.0;
    double x = 0.0;
    double y = 0.0;
    bool stale = false;
    bool at_boundary = false;
    bool diverging = false;
    double grid_median = 0.0;
    int evaluations = 0;
};

// Supremum of f(x, y) over x <= y. `pts` is the sorted scan grid (may
// include the endpoints); refinement runs in the chart coordinate. NaN
// values count as invalid points.
PairResult maximize_pair(const std::function<double(double, double)>& f,
                         const std::vector<double>& pts, const Chart& chart,
                         const PairOptions& opt = {});

struct LineResult {
    double value = 0.0;
    double x = 0.0;
    bool at_boundary = false;
};

// Supremum of g over the sorted points, refined by golden section in the
// chart coordinate around the best scan point.
LineResult maximize_line(const std::function<double(double)>& g, const std::vector<double>& pts,
                         const Chart& chart, double xi_tol = 1e-12);

// Supremum of the limit points of H(x, y) as y runs to the right endpoint
// (when `right` is set) or x runs to the left endpoint (when `left` is
// set). With both set, the iterated limits in both orders are included and
// a disagreement between them is reported in `notes`.
struct BoundaryResult {
    ExtendedReal value = ExtendedReal::zero();
    std::vector<LimitProbe> probes;
    std::vector<std::string> notes;
    // Every probe is finite or bounded: H^partial < inf even when `value` is unknown.
    bool bounded = false;
};

BoundaryResult boundary_sup(const std::function<double(double, double)>& H, const WeightedInterval& w,
                            bool left, bool right, const std::vector<double>& pts);

// n scan points: quantiles of the balancing measure when it is finite on
// both sides, otherwise a uniform grid in the chart coordinate. Endpoints
// are not included.
std::vector<double> scan_points(const WeightedInterval& w, std::optional<Balance> b, int n);

}  // namespace bihardy::search
