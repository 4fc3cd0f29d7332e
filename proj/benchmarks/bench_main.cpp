#include <benchmark/benchmark.h>

#include <cmath>

#include "bihardy/meanzero.hpp"
#include "bihardy/oracle.hpp"
#include "bihardy/quadrature.hpp"
#include "bihardy/vanishing.hpp"

using namespace bihardy;

namespace {

WeightedInterval make(Endpoint a, Endpoint b, const char* u, const char* v) {
    return WeightedInterval(a, b, expr::parse(u), expr::parse(v));
}

void BM_IntegrateHalfLine(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(quad::integrate([](double x) { return std::exp(-x) / (1 + x * x); }, 0, INFINITY));
}
BENCHMARK(BM_IntegrateHalfLine);

void BM_CompiledDensity(benchmark::State& st) {
    const auto c = expr::parse("x^(-2) * exp(-b*x) + sqrt(1 + x)").compile({{"b", 0.5}});
    double x = 1.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(c(x));
        x += 1e-9;
    }
}
BENCHMARK(BM_CompiledDensity);

// Fresh interval per iteration so the mass cache starts cold.
void BM_VanishingReport(benchmark::State& st) {
    for (auto _ : st) {
        const auto w = make(Endpoint::finite(1), Endpoint::pos_inf(), "1", "x^2");
        benchmark::DoNotOptimize(vanishing::vanishing_report(w, 2.0, 3.0));
    }
    st.SetLabel("(1,inf), mu=1, nu=x^2, p=2, q=3");
}
BENCHMARK(BM_VanishingReport)->Unit(benchmark::kMillisecond);

void BM_MeanZeroReport(benchmark::State& st) {
    for (auto _ : st) {
        const auto w = make(Endpoint::finite(1), Endpoint::pos_inf(), "x^(-2)", "1");
        benchmark::DoNotOptimize(meanzero::compute_mz_bounds(w, 1.25, 3.0));
    }
    st.SetLabel("(1,inf), mu=x^-2, nu=1, p=1.25, q=3");
}
BENCHMARK(BM_MeanZeroReport)->Unit(benchmark::kMillisecond);

void BM_DirichletOracle(benchmark::State& st) {
    const auto w = make(Endpoint::finite(0), Endpoint::finite(1), "1", "1");
    for (auto _ : st) benchmark::DoNotOptimize(oracle::dirichlet_constant(w, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_DirichletOracle)->Arg(500)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_TridiagonalEigenvalue(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::vector<double> d(n, 0.0), e(n - 1);
    for (int i = 0; i < n - 1; ++i) e[i] = 1.0 + 0.5 * std::sin(i);
    for (auto _ : st) benchmark::DoNotOptimize(oracle::tridiagonal_eigenvalue(d, e, n / 2));
}
BENCHMARK(BM_TridiagonalEigenvalue)->Arg(8001)->Arg(32001);

void BM_RayleighSearch(benchmark::State& st) {
    const auto w = make(Endpoint::finite(0), Endpoint::finite(1), "1", "1");
    oracle::SearchOptions so;
    so.grid_n = 200;
    so.restarts = 8;
    so.parallel = false;
    for (auto _ : st) benchmark::DoNotOptimize(oracle::rayleigh_search(w, 1.5, 3.0, oracle::Mode::vanishing, so));
}
BENCHMARK(BM_RayleighSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
