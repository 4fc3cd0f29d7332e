#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace bihardy {

enum class ValueClass { finite, infinite, zero, unknown };

const char* to_string(ValueClass c);

// Nonnegative quantity that may be symbolic +inf, exactly zero, or
// undetermined. `note` carries divergence diagnostics.
struct ExtendedReal {
    double value = std::numeric_limits<double>::quiet_NaN();
    ValueClass cls = ValueClass::unknown;
    std::string note;

    static ExtendedReal of(double v) {
        if (std::isnan(v)) return unknown();
        if (std::isinf(v)) return infinite();
        if (v == 0.0) return zero();
        return {v, ValueClass::finite, {}};
    }
    static ExtendedReal zero() { return {0.0, ValueClass::zero, {}}; }
    static ExtendedReal infinite(std::string note = {}) {
        return {std::numeric_limits<double>::infinity(), ValueClass::infinite, std::move(note)};
    }
    static ExtendedReal unknown(std::string note = {}) {
        return {std::numeric_limits<double>::quiet_NaN(), ValueClass::unknown, std::move(note)};
    }

    bool is_finite() const { return cls == ValueClass::finite || cls == ValueClass::zero; }
    bool is_infinite() const { return cls == ValueClass::infinite; }
    bool is_unknown() const { return cls == ValueClass::unknown; }
    // Numeric value usable in arithmetic: +inf for infinite, NaN for unknown.
    double as_double() const { return value; }
};

inline ExtendedReal scale(const ExtendedReal& a, double factor) {
    if (a.cls == ValueClass::finite) return ExtendedReal::of(a.value * factor);
    return a;
}

// max in the extended order; unknown wins unless the other side is infinite.
ExtendedReal max(const ExtendedReal& a, const ExtendedReal& b);

}  // namespace bihardy
