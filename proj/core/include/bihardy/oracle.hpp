#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bihardy/measure.hpp"

// Independent estimates of optimal constants from discretized variational
// problems: eigenvalue oracles for p = q = 2 and ascent on the discrete ratio
// for general exponents.
namespace bihardy::oracle {

struct Truncation {
    double left_cut = 0.0;
    double right_cut = 0.0;
    // mu-mass fraction beyond each cut; NaN when mu is infinite on that side.
    double discarded_left = 0.0;
    double discarded_right = 0.0;
};

struct Grid {
    std::vector<double> nodes;  // strictly increasing, nodes.front()/back() are the cuts
    Truncation truncation;
};

struct GridOptions {
    // Each infinite end is cut where the tail of every finite measure there
    // (mu, and nuhat at exponent p) falls below this fraction of its side mass.
    double tail_fraction = 1e-30;
    double p = 2.0;  // exponent of the nuhat measure consulted for cuts
    int fine_points = 65536;
};

Truncation truncate(const WeightedInterval& w, const GridOptions& opt = {});

// n cells (n + 1 nodes) equidistributed in a coordinate mixing the
// Liouville length int sqrt(u / v) with asinh(x - ref). Grids for n and 2n nest.
Grid make_grid(const WeightedInterval& w, int n, const GridOptions& opt = {});

enum class Kind { dirichlet_p2q2, neumann_p2q2, rayleigh_search, entropy_search };
enum class CertifiedSide { lower_bound, two_sided };

const char* to_string(Kind k);
const char* to_string(CertifiedSide s);

struct OracleResult {
    double a_estimate = 0.0;
    Kind kind = Kind::dirichlet_p2q2;
    int n = 0;
    CertifiedSide certified_side = CertifiedSide::two_sided;
    Truncation truncation;

    // Eigenvalue oracles: A on n, 2n and 4n cells, the eigenvalue on the
    // finest grid, and the convergence order observed across the three.
    double a_n = 0.0;
    double a_2n = 0.0;
    double a_4n = 0.0;
    double lambda = 0.0;
    double lambda_trivial = 0.0;  // Neumann only: the discarded zero eigenvalue
    double observed_order = 0.0;

    // Search oracles.
    double seed_certificate = 0.0;  // exact ratio bound of the seeded test function
    double best_discrete = 0.0;     // best ratio over nodal values
    int restarts = 0;
    bool inconsistent = false;      // every restart stayed below the B_* target

    std::vector<std::string> diagnostics;
};

struct EigenOptions {
    GridOptions grid;
};

OracleResult dirichlet_constant(const WeightedInterval& w, int grid_n, const EigenOptions& opt = {});
OracleResult neumann_gap(const WeightedInterval& w, int grid_n, const EigenOptions& opt = {});

// Smallest-first k-th eigenvalue (k = 0, 1, ...) of the symmetric tridiagonal
// matrix with diagonal d and off-diagonal e, by Sturm-count bisection.
double tridiagonal_eigenvalue(const std::vector<double>& d, const std::vector<double>& e, int k);

enum class Mode { vanishing, meanzero };

struct SearchOptions {
    int grid_n = 400;
    int restarts = 32;
    int max_iterations = 4000;
    std::uint64_t seed = 20240611;
    bool parallel = true;
    GridOptions grid;
};

OracleResult rayleigh_search(const WeightedInterval& w, double p, double q, Mode mode,
                             const SearchOptions& opt = {});

// Ascent on Ent_pi(f^2) / ||f'||^2_{nu,2}; pi is mu normalized.
OracleResult entropy_search(const WeightedInterval& w, const SearchOptions& opt = {});

// Discrete functionals on a grid, exposed for tests. f holds nodal values.
struct Discretization {
    std::vector<double> x;     // nodes
    std::vector<double> mass;  // lumped mu mass per node
    std::vector<double> nu;    // int v per cell
    std::vector<double> cond;  // 1 / int (1/v) per cell, the two-point flux weight
    std::vector<double> dx;    // cell widths
};
Discretization discretize(const WeightedInterval& w, const Grid& g);
double discrete_ratio(const Discretization& d, const std::vector<double>& f, double p, double q, Mode mode);
double discrete_entropy_ratio(const Discretization& d, const std::vector<double>& f);

}  // namespace bihardy::oracle
