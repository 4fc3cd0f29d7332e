#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/functional.hpp"

using namespace bihardy;

namespace {
WeightedInterval make(Endpoint a, Endpoint b, const char* u, const char* v) {
    return WeightedInterval(a, b, expr::parse(u), expr::parse(v));
}
}  // namespace

TEST_CASE("z* solves its equation") {
    for (double P : {1e-6, 0.1, 0.5})
        for (double Q : {1e-5, 0.2, 0.45}) {
            const double z = functional::solve_zstar(P, Q);
            CHECK(std::fabs(functional::zstar_residual(P, Q, z)) <= 1e-12);
        }
}

TEST_CASE("Sobolev bounds square the mean-zero constants") {
    const auto w = make(Endpoint::finite(0), Endpoint::finite(1), "1", "1");
    const auto r = functional::sobolev_bounds(w, 4.0);
    CHECK(r.q == doctest::Approx(4.0));
    const auto mz = meanzero::compute_mz_bounds(w, 2, 4);
    CHECK(r.b_s_star.as_double() == doctest::Approx(std::pow(mz.b_star.as_double(), 2)).epsilon(1e-9));
    CHECK(r.upper.as_double() == doctest::Approx(4 * r.b_s_star.as_double()));
    CHECK(r.verdict == Verdict::yes);
}

TEST_CASE("small gamma fails on exponential weights") {
    const auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "exp(-x)", "exp(-x)");
    const auto r = functional::nash_small_gamma(w, 1.0);
    CHECK(r.verdict == Verdict::no);
    CHECK(r.theta == doctest::Approx(std::log(2.0)).epsilon(1e-8));
    CHECK_THROWS_AS(functional::nash_small_gamma(w, 3.0), ValidationError);
}

TEST_CASE("log-Sobolev on the Gaussian") {
    const auto w = make(Endpoint::neg_inf(), Endpoint::pos_inf(), "exp(-x^2/2)", "exp(-x^2/2)");
    const auto r = functional::logsobolev_bounds(w);
    CHECK(r.median == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(r.max_zstar_residual <= 1e-12);
    const double full = r.b_lower_full.as_double(), med = r.b_lower_median.as_double();
    CHECK(med <= full * (1 + 1e-9));
    CHECK(full <= r.b_star.as_double() * (1 + 1e-9));
    CHECK(r.upper.as_double() == doctest::Approx(4 * r.b_star.as_double()));
    // Gross: Ent <= 2 E|f'|^2 under the normalized Gaussian, i.e. 2 / sqrt(2 pi) for this mu.
    const double gross = 2 / std::sqrt(2 * M_PI);
    CHECK(full <= gross);
    CHECK(r.upper.as_double() >= gross);
}
