#include "bihardy/extended_real.hpp"

namespace bihardy {

const char* to_string(ValueClass c) {
    switch (c) {
        case ValueClass::finite: return "finite";
        case ValueClass::infinite: return "infinite";
        case ValueClass::zero: return "zero";
        case ValueClass::unknown: return "unknown";
    }
    return "unknown";
}

ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_infinite()) return a;
    if (b.is_infinite()) return b;
    if (a.is_unknown()) return a;
    if (b.is_unknown()) return b;
    return a.value >= b.value ? a : b;
}

}  // namespace bihardy

#include "bihardy/report_types.hpp"

namespace bihardy {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace bihardy
