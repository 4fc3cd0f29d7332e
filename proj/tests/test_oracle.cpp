#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/oracle.hpp"

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

TEST_CASE("tridiagonal bisection against the discrete Laplacian") {
    const int n = 50;
    std::vector<double> d(n, 2.0), e(n - 1, -1.0);
    for (int k : {0, 1, 17, n - 1}) {
        const double want = 2 - 2 * std::cos((k + 1) * M_PI / (n + 1));
        CHECK(oracle::tridiagonal_eigenvalue(d, e, k) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("zero-diagonal form keeps tiny eigenvalues accurate") {
    // Golub-Kahan matrix of a bidiagonal with singular values spread over 20 decades.
    std::vector<double> d(4, 0.0), e = {1e-10, 1e-10, 1e10};
    const double smallest = oracle::tridiagonal_eigenvalue(d, e, 2);
    CHECK(smallest == doctest::Approx(1e-10).epsilon(1e-13));
}

TEST_CASE("grids nest and respect the cut") {
    const auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "exp(-x)", "exp(-x)");
    const auto g1 = oracle::make_grid(w, 64), g2 = oracle::make_grid(w, 128);
    REQUIRE(g1.nodes.size() == 65);
    REQUIRE(g2.nodes.size() == 129);
    for (std::size_t i = 0; i < g1.nodes.size(); ++i) CHECK(g2.nodes[2 * i] == g1.nodes[i]);
    CHECK(g1.nodes.front() == 0.0);
    // nuhat = e^x is infinite; mu's tail e^{-R} <= 1e-30 puts the cut near 69.
    CHECK(g1.truncation.right_cut == doctest::Approx(30 * std::log(10.0)).epsilon(0.05));
    CHECK(g1.truncation.discarded_right <= 1e-29);
}

TEST_CASE("truncation needs a finite measure at each open end") {
    const auto w = make(Endpoint::finite(0), Endpoint::pos_inf(), "1", "1");
    CHECK_THROWS_AS(oracle::truncate(w), NumericalError);
}

TEST_CASE("Dirichlet constant of Lebesgue (0,1) is 1/pi") {
    const auto r = oracle::dirichlet_constant(unit(), 500);
    CHECK(r.a_estimate == doctest::Approx(1 / M_PI).epsilon(1e-6));
    CHECK(r.lambda == doctest::Approx(M_PI * M_PI).epsilon(1e-4));
    CHECK(r.observed_order == doctest::Approx(2.0).epsilon(0.05));
    CHECK(r.certified_side == oracle::CertifiedSide::two_sided);
}

TEST_CASE("Neumann gap of Lebesgue (0,1)") {
    const auto r = oracle::neumann_gap(unit(), 500);
    CHECK(r.a_estimate == doctest::Approx(1 / M_PI).epsilon(1e-6));
    CHECK(std::fabs(r.lambda_trivial) <= 1e-10);
}

TEST_CASE("discrete ratio of a known function") {
    // The ratio is reported as N^{1/q} / D^{1/p}, on the same scale as A.
    const auto g = oracle::make_grid(unit(), 2000);
    const auto d = oracle::discretize(unit(), g);
    std::vector<double> f(g.nodes.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(M_PI * g.nodes[i]);
    CHECK(oracle::discrete_ratio(d, f, 2, 2, oracle::Mode::vanishing) == doctest::Approx(1 / M_PI).epsilon(1e-4));
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::cos(M_PI * g.nodes[i]);
    CHECK(oracle::discrete_ratio(d, f, 2, 2, oracle::Mode::meanzero) == doctest::Approx(1 / M_PI).epsilon(1e-4));
}

TEST_CASE("Rayleigh search reaches the eigenvalue and certifies B_*") {
    oracle::SearchOptions so;
    so.grid_n = 200;
    so.restarts = 4;
    const auto r = oracle::rayleigh_search(unit(), 2, 2, oracle::Mode::vanishing, so);
    CHECK(r.certified_side == oracle::CertifiedSide::lower_bound);
    CHECK(r.a_estimate == doctest::Approx(1 / M_PI).epsilon(2e-3));
    CHECK(r.seed_certificate >= 0.25 * (1 - 1e-9));
    CHECK_FALSE(r.inconsistent);
}

TEST_CASE("searches are deterministic for a fixed seed") {
    oracle::SearchOptions so;
    so.grid_n = 100;
    so.restarts = 4;
    const auto a = oracle::rayleigh_search(unit(), 1.5, 3, oracle::Mode::meanzero, so);
    const auto b = oracle::rayleigh_search(unit(), 1.5, 3, oracle::Mode::meanzero, so);
    CHECK(a.a_estimate == b.a_estimate);
    CHECK(a.best_discrete == b.best_discrete);
}

TEST_CASE("entropy search on the Gaussian") {
    const auto w = make(Endpoint::neg_inf(), Endpoint::pos_inf(), "exp(-x^2/2)", "exp(-x^2/2)");
    oracle::SearchOptions so;
    so.grid_n = 200;
    so.restarts = 4;
    const auto r = oracle::entropy_search(w, so);
    CHECK(r.a_estimate == doctest::Approx(2 / std::sqrt(2 * M_PI)).epsilon(5e-3));
    CHECK_FALSE(r.inconsistent);
}
