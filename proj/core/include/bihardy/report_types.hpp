#pragma once

#include <string>
#include <vector>

#include "bihardy/extended_real.hpp"

namespace bihardy {

enum class Verdict { yes, no, unknown };

const char* to_string(Verdict v);

// Result of one two-point supremum.
struct SupOutcome {
    ExtendedReal value;
    double x = 0.0;
    double y = 0.0;
    bool stale = false;
    bool at_boundary = false;
};

// Result of a one-dimensional supremum along the matching curve.
struct CurveOutcome {
    ExtendedReal value;
    double x = 0.0;
    bool disabled = false;
};

}  // namespace bihardy
