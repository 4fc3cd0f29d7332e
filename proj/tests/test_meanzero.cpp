#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/meanzero.hpp"

using namespace bihardy;

namespace {
WeightedInterval make(Endpoint a, Endpoint b, const char* u, const char* v) {
    return WeightedInterval(a, b, expr::parse(u), expr::parse(v));
}
}  // namespace

TEST_CASE("exponential weights on the half line") {
    const auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "exp(-x)", "exp(-x)");
    const auto r = meanzero::compute_mz_bounds(w, 2, 2);
    CHECK(r.pi_total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.b_star.as_double() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.b_lower.as_double() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.h_partial.as_double() == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.h_o.as_double() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
    CHECK(r.upper_valid);
    CHECK(r.upper.as_double() == doctest::Approx(2.0 * r.b_star.as_double()));
    CHECK(r.holds == Verdict::yes);

    const auto bad = meanzero::compute_mz_bounds(w, 2, 2.5);
    CHECK(bad.holds == Verdict::no);
    CHECK(bad.h_partial.is_infinite());
}

TEST_CASE("upper bound only where it applies") {
    const auto w = make(Endpoint::finite(0), Endpoint::finite(1), "1", "1");
    CHECK(meanzero::compute_mz_bounds(w, 1.5, 3).upper_valid);
    CHECK_FALSE(meanzero::compute_mz_bounds(w, 3, 4).upper_valid);
    CHECK_FALSE(meanzero::compute_mz_bounds(w, 1.5, 1.8).upper_valid);
}

TEST_CASE("sandwich on a bounded interval") {
    const auto w = make(Endpoint::finite(0), Endpoint::finite(2), "exp(x)", "1 + x");
    for (double q : {2.0, 3.0}) {
        const double p = 1.6;
        const auto r = meanzero::compute_mz_bounds(w, p, q);
        const double ho = r.h_o.is_finite() ? r.h_o.value : NAN;
        const double lo = r.b_lower.as_double(), bs = r.b_star.as_double();
        CHECK(ho <= lo * (1 + 1e-6));
        CHECK(lo <= std::pow(2.0, 1 - 1 / q) * ho * (1 + 1e-6));
        CHECK(lo <= bs * (1 + 1e-9));
        CHECK(bs <= std::pow(2.0, 1 / p - 1 / q) * lo * (1 + 1e-9));
    }
}

TEST_CASE("infinite total mass is rejected") {
    const auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "1", "1");
    CHECK_THROWS_AS(meanzero::compute_mz_bounds(w, 2, 2), ValidationError);
}
