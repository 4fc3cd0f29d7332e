#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "bihardy/measure.hpp"
#include "bihardy/report_types.hpp"
#include "bihardy/search.hpp"

namespace bihardy::detail {

// Mass as a plain double: +inf for divergent, NaN when undetermined.
inline double m(const ExtendedReal& e) { return e.is_finite() ? e.value : e.as_double(); }

inline std::vector<double> with_endpoints(const WeightedInterval& w, std::vector<double> pts) {
    pts.insert(pts.begin(), w.left());
    pts.push_back(w.right());
    return pts;
}

// Two-point supremum combined with the boundary limit term: the boundary
// value bounds the supremum from below, and an infinite boundary term or a
// diverging search makes it infinite.
inline SupOutcome two_point_sup(const std::function<double(double, double)>& f,
                                const WeightedInterval& w, const std::vector<double>& scan,
                                const search::BoundaryResult& bnd, const search::PairOptions& opt) {
    SupOutcome out;
    if (bnd.value.is_infinite()) {
        out.value = ExtendedReal::infinite("boundary term is infinite");
        out.at_boundary = true;
        return out;
    }
    const search::PairResult r = search::maximize_pair(f, with_endpoints(w, scan), w.chart(), opt);
    out.x = r.x;
    out.y = r.y;
    out.stale = r.stale;
    out.at_boundary = r.at_boundary;
    if (r.diverging) {
        out.value = ExtendedReal::infinite("supremum grows without bound toward the boundary");
        return out;
    }
    double v = std::isnan(r.value) ? 0.0 : r.value;
    if (bnd.value.is_finite() && bnd.value.value > v) {
        v = bnd.value.value;
        out.at_boundary = true;
    }
    out.value = ExtendedReal::of(v);
    if (bnd.value.is_unknown()) out.value.note = "boundary limit inconclusive; value is the interior supremum";
    if (r.stale) out.value.note += (out.value.note.empty() ? "" : "; ") + std::string("optimizer stale");
    return out;
}

inline std::optional<Balance> scan_balance(const WeightedInterval& w, const Balance& preferred) {
    if (w.side_finite(preferred, Side::left) && w.side_finite(preferred, Side::right)) return preferred;
    const Balance mu = Balance::mu();
    if (w.side_finite(mu, Side::left) && w.side_finite(mu, Side::right)) return mu;
    return std::nullopt;
}

}  // namespace bihardy::detail
