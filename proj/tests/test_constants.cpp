#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/constants.hpp"

using namespace bihardy::constants;

TEST_CASE("gamma and beta") {
    CHECK(gamma_fn(5) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(log_gamma(100) == doctest::Approx(std::lgamma(100.0)).epsilon(1e-14));
    CHECK(beta_fn(2, 3) == doctest::Approx(1.0 / 12).epsilon(1e-14));
    CHECK(std::exp(log_beta(0.7, 1.9)) == doctest::Approx(beta_fn(0.7, 1.9)).epsilon(1e-13));
}

TEST_CASE("k_general") {
    CHECK(k_general(2, 2) == doctest::Approx(2.0).epsilon(1e-15));
    // p = q reduces to p^{1/p} p'^{1/p'}.
    for (double p : {1.2, 1.5, 3.0, 7.0}) {
        const double pp = p / (p - 1);
        CHECK(k_general(p, p) == doctest::Approx(std::pow(p, 1 / p) * std::pow(pp, 1 / pp)).epsilon(1e-14));
    }
    CHECK(k_general(1.5, 4) == doctest::Approx(std::pow(1 + 4.0 / 3.0, 0.25) * std::pow(1 + 3.0 / 4.0, 1.0 / 3.0)));
}

TEST_CASE("k_halfline forms agree and improve on k_general") {
    CHECK(k_halfline(2, 4) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-14));
    for (double p : {1.3, 2.0, 2.7})
        for (double q : {p + 0.2, p + 1.0, p + 4.0}) {
            CHECK(k_halfline(p, q) == doctest::Approx(k_halfline_beta(p, q)).epsilon(1e-12));
            CHECK(k_halfline(p, q) <= k_general(p, q) * (1 + 1e-12));
        }
}
