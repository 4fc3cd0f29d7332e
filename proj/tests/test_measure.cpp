#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/measure.hpp"

using namespace bihardy;

namespace {
WeightedInterval make(Endpoint a, Endpoint b, const char* u, const char* v, expr::ParamBindings params = {}) {
    return WeightedInterval(a, b, expr::parse(u), expr::parse(v), std::move(params));
}
}  // namespace

TEST_CASE("endpoint parsing") {
    CHECK(Endpoint::parse("inf").tag == Endpoint::Tag::pos_inf);
    CHECK(Endpoint::parse("+inf").tag == Endpoint::Tag::pos_inf);
    CHECK(Endpoint::parse("-inf").tag == Endpoint::Tag::neg_inf);
    CHECK(Endpoint::parse("2.5").x == 2.5);
    CHECK_THROWS_AS(Endpoint::parse("abc"), ValidationError);
}

TEST_CASE("masses of mu and nuhat") {
    auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "exp(-x)", "exp(-x)");
    CHECK(w.mu_mass(0, w.right()).as_double() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(w.mu_mass(1, 2).as_double() == doctest::Approx(std::exp(-1.0) - std::exp(-2.0)).epsilon(1e-10));
    // nuhat density v^{-1/(p-1)} = e^x at p = 2: infinite toward +inf.
    CHECK(w.nuhat_mass(2.0, 0, 1).as_double() == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-10));
    CHECK(w.nuhat_mass(2.0, 0, w.right()).is_infinite());
    CHECK(w.side_finite(Balance::mu(), Side::right));
    CHECK_FALSE(w.side_finite(Balance::nuhat(2.0), Side::right));
}

TEST_CASE("masses are cached and shared between copies") {
    auto w = make(Endpoint::finite(0), Endpoint::finite(1), "1", "1");
    auto copy = w;
    const auto before = w.cache_size();
    copy.mu_mass(0.2, 0.3);
    CHECK(w.cache_size() == before + 1);
    w.mu_mass(0.2, 0.3);
    CHECK(w.cache_size() == before + 1);
}

TEST_CASE("median, quantile and matching point") {
    auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "exp(-x)", "1");
    CHECK(median(w, Balance::mu()) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    // Tiny fractions stay accurate: mu(0, x) = 1e-12 at x = -log1p(-1e-12).
    CHECK(quantile(w, Balance::mu(), 1e-12) == doctest::Approx(-std::log1p(-1e-12)).epsilon(1e-7));
    // mu(0, x) = mu(y, inf): 1 - e^-x = e^-y.
    const double y = matching_point(w, Balance::mu(), 0.5);
    CHECK(std::exp(-y) == doctest::Approx(1 - std::exp(-0.5)).epsilon(1e-9));
    // Lebesgue on the half line has infinite right mass.
    auto inf = make(Endpoint::finite(0), Endpoint::pos_inf(), "1", "1");
    CHECK_THROWS_AS(matching_point(inf, Balance::mu(), 1.0), NumericalError);
}

TEST_CASE("construction rejects bad intervals and densities") {
    CHECK_THROWS_AS(make(Endpoint::finite(-1), Endpoint::finite(1), "log(x)", "1"), ValidationError);
    CHECK_THROWS_AS(make(Endpoint::finite(0), Endpoint::finite(1), "x - 2", "1"), ValidationError);
    CHECK_THROWS_AS(make(Endpoint::finite(1), Endpoint::finite(0), "1", "1"), ValidationError);
    CHECK_THROWS_AS(make(Endpoint::finite(0), Endpoint::finite(1), "exp(a*x)", "1"), ValidationError);
}

TEST_CASE("brent root") {
    CHECK(brent_root([](double x) { return x * x - 2; }, 0, 2, 1e-15) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}
