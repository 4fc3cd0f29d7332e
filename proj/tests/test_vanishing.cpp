#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/vanishing.hpp"

using namespace bihardy;

namespace {
WeightedInterval make(Endpoint a, Endpoint b, const char* u, const char* v) {
    return WeightedInterval(a, b, expr::parse(u), expr::parse(v));
}
const WeightedInterval& unit() {
    static const auto w = make(Endpoint::finite(0), Endpoint::finite(1), "1", "1");
    return w;
}
}  // namespace

TEST_CASE("Lebesgue weights on (0,1) at p = q = 2") {
    const auto r = vanishing::vanishing_report(unit(), 2, 2);
    CHECK(r.b_star.as_double() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.b_lower.as_double() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.h_o.as_double() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.h_partial.cls == ValueClass::zero);
    CHECK(r.upper.as_double() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.holds == Verdict::yes);
    CHECK(r.argmax_b_star.x == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(r.argmax_b_star.y == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("objectives are bounded by their suprema") {
    const auto r = vanishing::vanishing_report(unit(), 1.7, 3.1);
    for (double x = 0.05; x < 1; x += 0.1)
        for (double y = x + 0.01; y < 1; y += 0.13) {
            CHECK(vanishing::objective_bstar(unit(), 1.7, 3.1, x, y) <= r.b_star.as_double() * (1 + 1e-9));
            CHECK(vanishing::objective_blower(unit(), 1.7, 3.1, x, y) <= r.b_lower.as_double() * (1 + 1e-9));
        }
}

TEST_CASE("comparison chain") {
    for (double q : {1.5, 2.0, 3.5}) {
        const double p = 1.5;
        const auto r = vanishing::vanishing_report(unit(), p, q);
        const double lo = r.b_lower.as_double(), hi = r.b_star.as_double();
        CHECK(lo <= hi * (1 + 1e-9));
        CHECK(hi <= std::pow(2.0, 1 / p - 1 / q) * lo * (1 + 1e-9));
        CHECK(hi <= r.upper.as_double());
        CHECK(r.upper_alt.as_double() == doctest::Approx(r.k_alt * lo));
    }
}

TEST_CASE("half line with a weight making nuhat finite") {
    const auto w = make(Endpoint::finite(1), Endpoint::pos_inf(), "1", "x^2");
    const auto r = vanishing::vanishing_report(w, 2, 2);
    CHECK(r.b_star.as_double() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.b_lower.as_double() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.holds == Verdict::yes);
}

TEST_CASE("infinite constant is classified") {
    // mu infinite on the right while nuhat grows: the inequality fails.
    const auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "1", "1");
    const auto r = vanishing::vanishing_report(w, 2, 2);
    CHECK(r.b_star.is_infinite());
    CHECK(r.holds == Verdict::no);
}

TEST_CASE("k perturbation scales the upper bound only") {
    vanishing::Options o;
    o.k_perturbation = 0.5;
    const auto a = vanishing::vanishing_report(unit(), 2, 2);
    const auto b = vanishing::vanishing_report(unit(), 2, 2, o);
    CHECK(b.b_star.as_double() == a.b_star.as_double());
    CHECK(b.upper.as_double() == doctest::Approx(0.5 * a.upper.as_double()));
}

TEST_CASE("invalid exponents") {
    CHECK_THROWS_AS(vanishing::vanishing_report(unit(), 1.0, 2), ValidationError);
    CHECK_THROWS_AS(vanishing::vanishing_report(unit(), 3, 2), ValidationError);
}
