#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/quadrature.hpp"

using namespace bihardy::quad;

TEST_CASE("finite intervals") {
    auto r = integrate([](double x) { return x * x; }, 0, 3);
    CHECK(r.finite());
    CHECK(r.value == doctest::Approx(9.0).epsilon(1e-12));
    // Integrable endpoint singularity.
    r = integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("infinite intervals") {
    auto r = integrate([](double x) { return std::exp(-x); }, 0, INFINITY);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    r = integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
    r = integrate([](double x) { return 1 / (x * x); }, 1, INFINITY);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tiny masses are resolved relative to themselves") {
    auto r = integrate([](double x) { return std::exp(-x); }, 60, INFINITY);
    CHECK(r.value == doctest::Approx(std::exp(-60.0)).epsilon(1e-8));
}

TEST_CASE("divergence is classified, not thrown") {
    CHECK_FALSE(integrate([](double) { return 1.0; }, 0, INFINITY).finite());
    CHECK_FALSE(integrate([](double x) { return 1 / x; }, 1, INFINITY).finite());
    CHECK_FALSE(integrate([](double x) { return 1 / x; }, 0, 1).finite());
}

TEST_CASE("divergence probe") {
    CHECK(divergence_probe([](double x) { return 1 / (x * x); }, INFINITY, 1) == Tail::integrable);
    CHECK(divergence_probe([](double x) { return 1 / x; }, INFINITY, 1) == Tail::nonintegrable);
    CHECK(divergence_probe([](double x) { return 1 / x; }, 0, 1) == Tail::nonintegrable);
    CHECK(divergence_probe([](double x) { return std::pow(x, -0.5); }, 0, 1) == Tail::integrable);
}
