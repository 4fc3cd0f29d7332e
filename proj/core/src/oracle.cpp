#include "bihardy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "bihardy/errors.hpp"
#include "bihardy/functional.hpp"
#include "bihardy/meanzero.hpp"
#include "bihardy/vanishing.hpp"

namespace bihardy::oracle {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double plain(const ExtendedReal& e) {
    if (e.cls == ValueClass::zero) return 0.0;
    return e.as_double();
}

// Cut toward an infinite end where the remaining tail of measure b is at most
// frac times its mass on that side of the reference point.
double tail_cut(const WeightedInterval& w, const Balance& b, Side side, double frac) {
    const double ref = w.reference_point();
    const double side_mass = plain(w.side_mass(b, side));
    const double target = frac * side_mass;
    const double sgn = side == Side::right ? 1.0 : -1.0;
    auto tail = [&](double x) {
        return side == Side::right ? plain(w.mass(b, x, w.right())) : plain(w.mass(b, w.left(), x));
    };
    auto ok = [&](double x) {
        const double t = tail(x);
        return !std::isnan(t) && t <= target;
    };
    const double d = std::max(1.0, 1e-3 * std::fabs(ref));
    double inner = ref;
    double outer = ref + sgn * d;
    int k = 0;
    while (!ok(outer)) {
        inner = outer;
        outer = ref + sgn * d * std::ldexp(1.0, ++k);
        if (!std::isfinite(outer) || k > 1100)
            throw NumericalError("truncation infeasible: tail never falls below the requested fraction");
    }
    // Bisect in asinh distance from ref; `outer` always satisfies the bound.
    double lo = std::asinh(std::fabs(inner - ref));
    double hi = std::asinh(std::fabs(outer - ref));
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double x = ref + sgn * std::sinh(mid);
        if (ok(x)) {
            hi = mid;
            outer = x;
        } else {
            lo = mid;
        }
    }
    return outer;
}

struct Gauss3 {
    template <class F>
    static double integrate(const F& f, double a, double b) {
        static const double r = std::sqrt(0.6);
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        return h * (5.0 / 9.0 * f(c - r * h) + 8.0 / 9.0 * f(c) + 5.0 / 9.0 * f(c + r * h));
    }
};

// Sturm count: number of eigenvalues of the tridiagonal (d, e) below x.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e2, double x, double pivmin) {
    int count = 0;
    double q = d[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        q = d[i] - x - e2[i - 1] / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
    }
    return count;
}

// Golub-Kahan form of the bidiagonal factor B = C^{1/2} G M^{-1/2} of the
// pencil (K, M): a zero-diagonal tridiagonal whose eigenvalues are +-sigma(B).
// Bisection on it resolves small singular values to high relative accuracy,
// which squaring into K would lose.
std::vector<double> golub_kahan_offdiag(const Discretization& dz, bool neumann) {
    const std::size_t n = dz.cond.size();
    std::vector<double> e;
    e.reserve(2 * n + 1);
    for (std::size_t c = 0; c < n; ++c) {
        const double s = std::sqrt(dz.cond[c]);
        const bool left_free = neumann || c >= 1;
        const bool right_free = neumann || c + 1 <= n - 1;
        if (left_free) e.push_back(s / std::sqrt(dz.mass[c]));
        if (right_free) e.push_back(s / std::sqrt(dz.mass[c + 1]));
    }
    return e;
}

struct EigenSolve {
    double a = 0.0;
    double lambda = 0.0;
    double trivial = 0.0;
};

EigenSolve solve_on(const WeightedInterval& w, const Grid& g, bool neumann) {
    const Discretization dz = discretize(w, g);
    const std::vector<double> e = golub_kahan_offdiag(dz, neumann);
    for (double v : e)
        if (!std::isfinite(v) || v <= 0.0) throw NumericalError("eigen oracle: degenerate stencil coefficient");
    const std::vector<double> d(e.size() + 1, 0.0);
    const int n = static_cast<int>(dz.cond.size());
    // Dirichlet: 2n-1 eigenvalues, index n-1 is the structural zero.
    // Neumann: 2n+1 eigenvalues, index n is the zero from constants.
    EigenSolve out;
    const double sigma = tridiagonal_eigenvalue(d, e, neumann ? n + 1 : n);
    if (!(sigma > 0.0)) throw NumericalError("eigen oracle: nonpositive eigenvalue");
    out.a = 1.0 / sigma;
    out.lambda = sigma * sigma;
    if (neumann) {
        const double s0 = tridiagonal_eigenvalue(d, e, n);
        out.trivial = s0 * s0;
    }
    return out;
}

OracleResult eigen_oracle(const WeightedInterval& w, int grid_n, const EigenOptions& opt, bool neumann) {
    if (grid_n < 4) throw ValidationError("grid_n must be at least 4");
    GridOptions go = opt.grid;
    go.p = 2.0;
    OracleResult r;
    r.kind = neumann ? Kind::neumann_p2q2 : Kind::dirichlet_p2q2;
    r.certified_side = CertifiedSide::two_sided;
    r.n = grid_n;
    const Grid g1 = make_grid(w, grid_n, go);
    r.truncation = g1.truncation;
    const EigenSolve s1 = solve_on(w, g1, neumann);
    const EigenSolve s2 = solve_on(w, make_grid(w, 2 * grid_n, go), neumann);
    const EigenSolve s4 = solve_on(w, make_grid(w, 4 * grid_n, go), neumann);
    r.a_n = s1.a;
    r.a_2n = s2.a;
    r.a_4n = s4.a;
    r.lambda = s4.lambda;
    r.lambda_trivial = s4.trivial;
    r.a_estimate = s2.a + (s2.a - s1.a) / 3.0;
    const double d12 = std::fabs(s1.a - s2.a);
    const double d24 = std::fabs(s2.a - s4.a);
    r.observed_order = (d12 > 0.0 && d24 > 0.0) ? std::log2(d12 / d24) : kNaN;
    if (neumann && !(s4.trivial < 1e-10 * std::max(1.0, s4.lambda)))
        r.diagnostics.push_back("trivial Neumann eigenvalue is not numerically zero");
    if (!std::isnan(r.truncation.discarded_left) || !std::isnan(r.truncation.discarded_right)) {
        std::ostringstream os;
        os << "truncated to [" << r.truncation.left_cut << ", " << r.truncation.right_cut << "]";
        r.diagnostics.push_back(os.str());
    }
    return r;
}

// ---- ascent on discrete ratios -------------------------------------------

// Log of a scale-invariant objective and its gradient over the free nodal values.
struct Objective {
    virtual ~Objective() = default;
    virtual double eval(const std::vector<double>& f, std::vector<double>& grad) const = 0;
    // Moves the iterate along a direction the objective ignores.
    virtual void recenter(std::vector<double>&) const {}
    // Whether the end nodes are held at zero (free variables exclude them).
    virtual bool pinned() const { return false; }
    virtual std::vector<double> full(const std::vector<double>& v) const { return v; }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct RatioObjective : Objective {
    const Discretization& dz;
    double p, q;
    bool pin;  // vanishing: end nodes held at zero, free vars are interior nodes
    double total_mass = 0.0;

    RatioObjective(const Discretization& d, double p_, double q_, bool pin_) : dz(d), p(p_), q(q_), pin(pin_) {
        for (double m : dz.mass) total_mass += m;
    }

    bool pinned() const override { return pin; }

    std::vector<double> full(const std::vector<double>& v) const override {
        if (!pin) return v;
        std::vector<double> f(v.size() + 2, 0.0);
        std::copy(v.begin(), v.end(), f.begin() + 1);
        return f;
    }

    // Mean-zero mode is shift-invariant. Keeping the pi-mean of the iterate at
    // zero stops f - mean from cancelling when the extremal lives in a tail
    // of tiny mass, where the rounding of a large mean would swamp it.
    void recenter(std::vector<double>& v) const override {
        if (pin) return;
        double mean = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) mean += dz.mass[i] * v[i];
        mean /= total_mass;
        for (double& x : v) x -= mean;
    }

    double eval(const std::vector<double>& v, std::vector<double>& grad) const override {
        const std::vector<double> f = full(v);
        const std::size_t N = f.size();
        double mean = 0.0;
        if (!pin) {
            for (std::size_t i = 0; i < N; ++i) mean += dz.mass[i] * f[i];
            mean /= total_mass;
        }
        double num = 0.0;
        std::vector<double> gn(N), gd(N, 0.0);
        for (std::size_t i = 0; i < N; ++i) {
            const double g = f[i] - mean;
            const double a = std::pow(std::fabs(g), q - 1.0);
            num += dz.mass[i] * a * std::fabs(g);
            gn[i] = q * dz.mass[i] * a * (g < 0 ? -1.0 : 1.0);
        }
        if (!pin) {
            double s = 0.0;
            for (double x : gn) s += x;
            for (std::size_t i = 0; i < N; ++i) gn[i] -= dz.mass[i] * s / total_mass;
        }
        double den = 0.0;
        for (std::size_t c = 0; c + 1 < N; ++c) {
            const double s = (f[c + 1] - f[c]) / dz.dx[c];
            const double a = std::pow(std::fabs(s), p - 1.0);
            den += dz.nu[c] * a * std::fabs(s);
            const double t = p * dz.nu[c] * a * (s < 0 ? -1.0 : 1.0) / dz.dx[c];
            gd[c + 1] += t;
            gd[c] -= t;
        }
        if (!(num > 0.0) || !(den > 0.0)) return -std::numeric_limits<double>::infinity();
        const double phi = std::log(num) / q - std::log(den) / p;
        grad.assign(v.size(), 0.0);
        const std::size_t off = pin ? 1 : 0;
        for (std::size_t j = 0; j < v.size(); ++j)
            grad[j] = gn[j + off] / (q * num) - gd[j + off] / (p * den);
        return phi;
    }
};

struct EntropyObjective : Objective {
    const Discretization& dz;
    std::vector<double> pi;

    explicit EntropyObjective(const Discretization& d) : dz(d), pi(d.mass) {
        double t = 0.0;
        for (double m : pi) t += m;
        for (double& m : pi) m /= t;
    }

    // (1 + r) log(1 + r) - r, accurate for small r.
    static double ent_term(double r) {
        if (std::fabs(r) < 1e-3) return r * r * (0.5 - r * (1.0 / 6.0 - r / 12.0));
        if (r <= -1.0) return 1.0;  // f = 0: the 0 log 0 limit
        return (1.0 + r) * std::log1p(r) - r;
    }

    // Ent(f^2) = sum pi_i S h(f_i^2 / S - 1): nonnegative terms, no cancellation.
    static double entropy(const std::vector<double>& pi, const std::vector<double>& f, double* logS_out) {
        double S = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) S += pi[i] * f[i] * f[i];
        double E = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) E += pi[i] * S * ent_term(f[i] * f[i] / S - 1.0);
        if (logS_out) *logS_out = std::log(S);
        return E;
    }

    double eval(const std::vector<double>& f, std::vector<double>& grad) const override {
        double logS = 0.0;
        const double E = entropy(pi, f, &logS);
        double den = 0.0;
        std::vector<double> gd(f.size(), 0.0);
        for (std::size_t c = 0; c + 1 < f.size(); ++c) {
            const double s = (f[c + 1] - f[c]) / dz.dx[c];
            den += dz.nu[c] * s * s;
            const double t = 2.0 * dz.nu[c] * s / dz.dx[c];
            gd[c + 1] += t;
            gd[c] -= t;
        }
        if (!(E > 0.0) || !(den > 0.0)) return -std::numeric_limits<double>::infinity();
        grad.assign(f.size(), 0.0);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double f2 = f[i] * f[i];
            const double ge = f2 > 0.0 ? 2.0 * pi[i] * f[i] * (std::log(f2) - logS) : 0.0;
            grad[i] = ge / E - gd[i] / den;
        }
        return std::log(E) - std::log(den);
    }
};

// Metric for the ascent: the Hessian of the p-energy sum nu_c |s_c|^p at the
// current slopes (floored), plus a small mass shift, restricted to the free
// nodes. For p = 2 it is the plain stiffness matrix. Node scales across the
// grid can differ by dozens of decades; without it the search barely moves in
// the tails.
class Preconditioner {
public:
    Preconditioner(const Discretization& dz, bool pinned, double p, const std::vector<double>& f) {
        const std::size_t n = dz.dx.size();
        std::vector<double> slope(n, 1.0);
        if (p != 2.0) {
            double smax = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                slope[c] = std::fabs(f[c + 1] - f[c]) / dz.dx[c];
                smax = std::max(smax, slope[c]);
            }
            const double floor = std::max(1e-4 * smax, std::numeric_limits<double>::min());
            for (double& sc : slope) sc = std::pow(std::max(sc, floor), p - 2.0);
        }
        std::vector<double> diag(n + 1, 0.0), off(n, 0.0);
        double ksum = 0.0, msum = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            const double wc = dz.nu[c] * slope[c] / (dz.dx[c] * dz.dx[c]);
            diag[c] += wc;
            diag[c + 1] += wc;
            off[c] = -wc;
            ksum += 2.0 * wc;
        }
        for (double m : dz.mass) msum += m;
        const double shift = 1e-8 * ksum / msum;
        for (std::size_t i = 0; i <= n; ++i) diag[i] += shift * dz.mass[i];
        if (pinned) {
            diag_.assign(diag.begin() + 1, diag.end() - 1);
            off_.assign(off.begin() + 1, off.end() - 1);
        } else {
            diag_ = std::move(diag);
            off_ = std::move(off);
        }
    }

    // Thomas solve of P z = r.
    std::vector<double> solve(const std::vector<double>& r) const {
        const std::size_t N = diag_.size();
        std::vector<double> c(N), z(N);
        double den = diag_[0];
        c[0] = N > 1 ? off_[0] / den : 0.0;
        z[0] = r[0] / den;
        for (std::size_t i = 1; i < N; ++i) {
            den = diag_[i] - off_[i - 1] * c[i - 1];
            if (i + 1 < N) c[i] = off_[i] / den;
            z[i] = (r[i] - off_[i - 1] * z[i - 1]) / den;
        }
        for (std::size_t i = N - 1; i-- > 0;) z[i] -= c[i] * z[i + 1];
        return z;
    }

private:
    std::vector<double> diag_, off_;
};

// Limited-memory BFGS ascent with backtracking, initial inverse Hessian a
// multiple of P^-1. Returns the best log-objective.
double lbfgs_ascent(const Objective& obj, const Preconditioner* pre, std::vector<double>& x, int max_iter) {
    constexpr int kMemory = 10;
    constexpr int kWindow = 50;
    obj.recenter(x);
    std::vector<double> g;
    double phi = obj.eval(x, g);
    if (!std::isfinite(phi)) return phi;
    std::deque<std::vector<double>> S, Y;
    std::deque<double> rho;
    std::deque<double> history{phi};
    std::vector<double> gnew, xnew(x.size()), dir(x.size());
    for (int it = 0; it < max_iter; ++it) {
        // Two-loop recursion on the ascent gradient.
        dir = g;
        std::vector<double> alpha(S.size());
        for (int k = static_cast<int>(S.size()) - 1; k >= 0; --k) {
            alpha[k] = rho[k] * dot(S[k], dir);
            for (std::size_t i = 0; i < dir.size(); ++i) dir[i] -= alpha[k] * Y[k][i];
        }
        if (pre) dir = pre->solve(dir);
        double gamma = 1.0;
        if (!S.empty()) gamma = dot(S.back(), Y.back()) / dot(Y.back(), pre ? pre->solve(Y.back()) : Y.back());
        else gamma = 1.0 / std::max(1e-300, std::sqrt(dot(g, dir)));
        for (double& v : dir) v *= gamma;
        for (std::size_t k = 0; k < S.size(); ++k) {
            const double beta = rho[k] * dot(Y[k], dir);
            for (std::size_t i = 0; i < dir.size(); ++i) dir[i] += (alpha[k] - beta) * S[k][i];
        }
        double slope = dot(g, dir);
        if (!(slope > 0.0)) {
            S.clear();
            Y.clear();
            rho.clear();
            dir = pre ? pre->solve(g) : g;
            const double gn = std::sqrt(dot(g, dir));
            for (double& v : dir) v /= std::max(1e-300, gn);
            slope = dot(g, dir);
            if (!(slope > 0.0)) break;
        }
        double t = 1.0;
        double phinew = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < x.size(); ++i) xnew[i] = x[i] + t * dir[i];
            phinew = obj.eval(xnew, gnew);
            if (std::isfinite(phinew) && phinew >= phi + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
        std::vector<double> s(x.size()), y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            s[i] = xnew[i] - x[i];
            y[i] = g[i] - gnew[i];  // curvature pair of the minimized -phi
        }
        const double sy = dot(s, y);
        if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
            S.push_back(std::move(s));
            Y.push_back(std::move(y));
            rho.push_back(1.0 / sy);
            if (S.size() > kMemory) {
                S.pop_front();
                Y.pop_front();
                rho.pop_front();
            }
        }
        x.swap(xnew);
        g.swap(gnew);
        phi = phinew;
        obj.recenter(x);
        // The objective is scale-invariant: keep the iterate near unit size.
        double amax = 0.0;
        for (double v : x) amax = std::max(amax, std::fabs(v));
        if (amax > 1e3 || (amax > 0.0 && amax < 1e-3)) {
            const double c = 1.0 / amax;
            for (double& v : x) v *= c;
            for (double& v : g) v /= c;
            for (auto& v : S)
                for (double& z : v) z *= c;
            for (auto& v : Y)
                for (double& z : v) z /= c;
        }
        history.push_back(phi);
        if (static_cast<int>(history.size()) > kWindow) {
            if (phi - history.front() < 1e-9) break;
            history.pop_front();
        }
    }
    return phi;
}

// Cumulative int h over the grid (nuhat at exponent p), one entry per node,
// up to a constant. Anchored at the node where h is smallest: with nuhat
// infinite at both ends, summing from a cut gives values near 1e28 whose
// interior differences are lost.
std::vector<double> cumulative_nuhat(const WeightedInterval& w, const Grid& g, double p) {
    const std::size_t N = g.nodes.size();
    auto h = [&](double x) { return w.h(x, p); };
    std::size_t k = 0;
    double hmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < N; ++i) {
        const double hv = h(g.nodes[i]);
        if (hv < hmin) hmin = hv, k = i;
    }
    std::vector<double> H(N, 0.0);
    for (std::size_t c = k; c + 1 < N; ++c) H[c + 1] = H[c] + Gauss3::integrate(h, g.nodes[c], g.nodes[c + 1]);
    for (std::size_t c = k; c > 0; --c) H[c - 1] = H[c] - Gauss3::integrate(h, g.nodes[c - 1], g.nodes[c]);
    return H;
}

double at(const std::vector<double>& x, const std::vector<double>& H, double z) {
    if (z <= x.front()) return H.front();
    if (z >= x.back()) return H.back();
    const auto it = std::upper_bound(x.begin(), x.end(), z);
    const std::size_t j = static_cast<std::size_t>(it - x.begin()) - 1;
    const double t = (z - x[j]) / (x[j + 1] - x[j]);
    return H[j] + t * (H[j + 1] - H[j]);
}

// Test function rising like nuhat from the left end to a plateau on [x, y]
// and falling like nuhat to the right end.
std::vector<double> plateau_seed(const Grid& g, const std::vector<double>& H, double x, double y) {
    const double L = at(g.nodes, H, x) - H.front();
    const double R = H.back() - at(g.nodes, H, y);
    std::vector<double> f(g.nodes.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double z = g.nodes[i];
        if (z <= x) f[i] = L > 0 ? (H[i] - H.front()) / L : 1.0;
        else if (z >= y) f[i] = R > 0 ? (H.back() - H[i]) / R : 1.0;
        else f[i] = 1.0;
    }
    return f;
}

// Test function -nuhat[z v x, theta] left of theta, nuhat[theta, z ^ y] right of it.
std::vector<double> step_seed(const Grid& g, const std::vector<double>& H, double x, double y, double theta) {
    const double Hx = at(g.nodes, H, x), Hy = at(g.nodes, H, y), Ht = at(g.nodes, H, theta);
    std::vector<double> f(g.nodes.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double Hz = std::clamp(H[i], Hx, Hy);
        f[i] = Hz - Ht;
    }
    return f;
}

std::vector<double> random_seed(std::size_t N, bool vanish, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<double> a(8), b(8);
    for (int k = 0; k < 8; ++k) {
        a[k] = nd(rng) / (k + 1);
        b[k] = vanish ? 0.0 : nd(rng) / (k + 1);
    }
    const double shift = vanish ? 0.0 : nd(rng);
    std::vector<double> f(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(N - 1);
        double s = shift;
        for (int k = 0; k < 8; ++k) s += a[k] * std::sin((k + 1) * M_PI * t) + b[k] * std::cos((k + 1) * M_PI * t);
        f[i] = s;
    }
    return f;
}

// For p != 2 the metric depends on the iterate; rebuild it between rounds
// until a round stops gaining.
double ascend(const Objective& obj, const Discretization& dz, double p, std::vector<double>& x, int max_iter) {
    double best = -std::numeric_limits<double>::infinity();
    const int rounds = p == 2.0 ? 1 : 12;
    for (int round = 0; round < rounds; ++round) {
        const Preconditioner pre(dz, obj.pinned(), p, obj.full(x));
        const double now = lbfgs_ascent(obj, &pre, x, max_iter);
        if (!std::isfinite(now)) return std::max(best, now);
        const bool gained = now > best + 1e-9;
        best = std::max(best, now);
        if (!gained) break;
    }
    return best;
}

// For p < 2 the p-energy metric freezes nearly flat cells, while the plain
// metric keeps moving gentle slopes spread over many decades of x.
// Alternate the two until neither gains.
double polish(const Objective& obj, const Discretization& dz, double p, std::vector<double>& x, double best,
              int max_iter) {
    for (int round = 0; round < 4; ++round) {
        const double a = lbfgs_ascent(obj, nullptr, x, max_iter);
        const double b = ascend(obj, dz, p, x, max_iter);
        const double now = std::max(a, b);
        const bool gained = now > best + 1e-7;
        best = std::max(best, now);
        if (!gained) break;
    }
    return best;
}

template <class F>
void for_each_index(std::size_t count, bool parallel, const F& fn) {
    if (!parallel) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < count; start += width) {
        std::vector<std::future<void>> jobs;
        for (std::size_t i = start; i < std::min(count, start + width); ++i)
            jobs.push_back(std::async(std::launch::async, [&fn, i] { fn(i); }));
        for (auto& j : jobs) j.get();
    }
}

// Ascends from every seed, then polishes the best few when p != 2. Returns
// the best log-objective; the reduction is in seed order, so deterministic.
double run_restarts(const Objective& obj, const Discretization& dz, double p,
                    std::vector<std::vector<double>> seeds, int max_iter, bool parallel) {
    constexpr double kNone = -std::numeric_limits<double>::infinity();
    std::vector<double> best(seeds.size(), kNone);
    for_each_index(seeds.size(), parallel, [&](std::size_t i) { best[i] = ascend(obj, dz, p, seeds[i], max_iter); });
    if (p != 2.0) {
        std::vector<std::size_t> order(seeds.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return best[a] > best[b]; });
        order.resize(std::min<std::size_t>(4, order.size()));
        for_each_index(order.size(), parallel, [&](std::size_t k) {
            const std::size_t i = order[k];
            if (std::isfinite(best[i])) best[i] = polish(obj, dz, p, seeds[i], best[i], max_iter);
        });
    }
    double out = kNone;
    for (double b : best)
        if (std::isfinite(b)) out = std::max(out, b);
    return out;
}

}  // namespace

const char* to_string(Kind k) {
    switch (k) {
        case Kind::dirichlet_p2q2: return "dirichlet_p2q2";
        case Kind::neumann_p2q2: return "neumann_p2q2";
        case Kind::rayleigh_search: return "rayleigh_search";
        case Kind::entropy_search: return "entropy_search";
    }
    return "?";
}

const char* to_string(CertifiedSide s) {
    return s == CertifiedSide::lower_bound ? "lower_bound" : "two_sided";
}

Truncation truncate(const WeightedInterval& w, const GridOptions& opt) {
    Truncation t;
    const Balance mu = Balance::mu();
    const double mu_total = plain(w.total(mu));
    auto cut_for = [&](Side side) {
        std::vector<double> cuts;
        for (const Balance& b : {mu, Balance::nuhat(opt.p)}) {
            if (!w.side_finite(b, side)) continue;
            if (!(plain(w.side_mass(b, side)) > 0.0)) continue;
            cuts.push_back(tail_cut(w, b, side, opt.tail_fraction));
        }
        if (cuts.empty())
            throw NumericalError(std::string("truncation infeasible: mu and nuhat are both infinite toward ") +
                                 (side == Side::right ? "+inf" : "-inf") +
                                 "; a finite cut needs one measure with a finite tail");
        return side == Side::right ? *std::max_element(cuts.begin(), cuts.end())
                                   : *std::min_element(cuts.begin(), cuts.end());
    };
    auto discarded = [&](double from, double to) {
        if (!std::isfinite(mu_total)) return kNaN;
        return plain(w.mass(mu, from, to)) / mu_total;
    };
    if (w.left_endpoint().is_finite()) {
        t.left_cut = w.left();
        t.discarded_left = 0.0;
    } else {
        t.left_cut = cut_for(Side::left);
        t.discarded_left = discarded(w.left(), t.left_cut);
    }
    if (w.right_endpoint().is_finite()) {
        t.right_cut = w.right();
        t.discarded_right = 0.0;
    } else {
        t.right_cut = cut_for(Side::right);
        t.discarded_right = discarded(t.right_cut, w.right());
    }
    return t;
}

Grid make_grid(const WeightedInterval& w, int n, const GridOptions& opt) {
    if (n < 2) throw ValidationError("grid needs at least two cells");
    Grid g;
    g.truncation = truncate(w, opt);
    const double a = g.truncation.left_cut;
    const double b = g.truncation.right_cut;
    const bool bounded = w.left_endpoint().is_finite() && w.right_endpoint().is_finite();
    const double ref = bounded ? 0.5 * (a + b) : std::clamp(w.reference_point(), a, b);
    const double scale = bounded ? 0.5 * (b - a) : 1.0;
    const double z0 = std::asinh((a - ref) / scale);
    const double z1 = std::asinh((b - ref) / scale);
    const int M = std::max(opt.fine_points, 4 * n);
    auto xof = [&](double z) { return ref + scale * std::sinh(z); };

    std::vector<double> zeta(M + 1), tau(M + 1, 0.0), lio(M + 1, 0.0);
    for (int j = 0; j <= M; ++j) zeta[j] = z0 + (z1 - z0) * j / M;
    for (int j = 0; j < M; ++j) {
        const double xl = j == 0 ? a : xof(zeta[j]);
        const double xr = j + 1 == M ? b : xof(zeta[j + 1]);
        const double xm = xof(0.5 * (zeta[j] + zeta[j + 1]));
        double dens = std::sqrt(w.u(xm) / w.v(xm));
        if (!std::isfinite(dens)) dens = 0.0;
        lio[j + 1] = lio[j] + dens * (xr - xl);
    }
    const double ltot = lio[M];
    const bool use_lio = std::isfinite(ltot) && ltot > 0.0;
    for (int j = 0; j <= M; ++j)
        tau[j] = static_cast<double>(j) / M + (use_lio ? lio[j] / ltot : 0.0);

    const double tau_total = tau[M];
    g.nodes.resize(n + 1);
    g.nodes.front() = a;
    g.nodes.back() = b;
    for (int i = 1; i < n; ++i) {
        const double t = tau_total * i / n;
        const auto it = std::upper_bound(tau.begin(), tau.end(), t);
        const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - tau.begin()), M) - 1;
        const double frac = (t - tau[j]) / (tau[j + 1] - tau[j]);
        g.nodes[i] = xof(zeta[j] + frac * (zeta[j + 1] - zeta[j]));
    }
    for (int i = 0; i < n; ++i)
        if (!(g.nodes[i] < g.nodes[i + 1])) throw NumericalError("grid nodes collapsed; interval too narrow for n");
    return g;
}

Discretization discretize(const WeightedInterval& w, const Grid& g) {
    Discretization d;
    d.x = g.nodes;
    const std::size_t n = g.nodes.size() - 1;
    d.mass.assign(n + 1, 0.0);
    d.nu.resize(n);
    d.cond.resize(n);
    d.dx.resize(n);
    auto u = [&](double x) { return w.u(x); };
    auto v = [&](double x) { return w.v(x); };
    auto inv_v = [&](double x) { return 1.0 / w.v(x); };
    for (std::size_t c = 0; c < n; ++c) {
        const double lo = g.nodes[c], hi = g.nodes[c + 1];
        const double mid = 0.5 * (lo + hi);
        d.mass[c] += Gauss3::integrate(u, lo, mid);
        d.mass[c + 1] += Gauss3::integrate(u, mid, hi);
        d.nu[c] = Gauss3::integrate(v, lo, hi);
        d.cond[c] = 1.0 / Gauss3::integrate(inv_v, lo, hi);
        d.dx[c] = hi - lo;
    }
    return d;
}

double discrete_ratio(const Discretization& d, const std::vector<double>& f, double p, double q, Mode mode) {
    const bool pin = mode == Mode::vanishing;
    RatioObjective obj(d, p, q, pin);
    std::vector<double> v = pin ? std::vector<double>(f.begin() + 1, f.end() - 1) : f;
    std::vector<double> g;
    return std::exp(obj.eval(v, g));
}

double discrete_entropy_ratio(const Discretization& d, const std::vector<double>& f) {
    EntropyObjective obj(d);
    std::vector<double> g;
    return std::exp(obj.eval(f, g));
}

double tridiagonal_eigenvalue(const std::vector<double>& d, const std::vector<double>& e, int k) {
    const std::size_t n = d.size();
    if (n == 0 || e.size() + 1 != n || k < 0 || static_cast<std::size_t>(k) >= n)
        throw ValidationError("tridiagonal_eigenvalue: bad dimensions");
    std::vector<double> e2(e.size());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, emax2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
        e2[i] = e[i] * e[i];
        emax2 = std::max(emax2, e2[i]);
    }
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax2);
    const double norm = std::max(std::fabs(lo), std::fabs(hi));
    const double floor_width = 1e-30 * norm;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e2, mid, pivmin) > k) hi = mid;
        else lo = mid;
        if (hi - lo <= std::max(2.0 * kEps * std::max(std::fabs(lo), std::fabs(hi)), floor_width)) break;
    }
    return 0.5 * (lo + hi);
}

OracleResult dirichlet_constant(const WeightedInterval& w, int grid_n, const EigenOptions& opt) {
    return eigen_oracle(w, grid_n, opt, false);
}

OracleResult neumann_gap(const WeightedInterval& w, int grid_n, const EigenOptions& opt) {
    return eigen_oracle(w, grid_n, opt, true);
}

OracleResult rayleigh_search(const WeightedInterval& w, double p, double q, Mode mode, const SearchOptions& opt) {
    if (!(p > 1.0) || !(q > 1.0) || !std::isfinite(p) || !std::isfinite(q))
        throw ValidationError("rayleigh_search needs 1 < p, q < inf");
    OracleResult r;
    r.kind = Kind::rayleigh_search;
    r.certified_side = CertifiedSide::lower_bound;
    r.n = opt.grid_n;
    GridOptions go = opt.grid;
    go.p = p;
    const Grid g = make_grid(w, opt.grid_n, go);
    r.truncation = g.truncation;
    const Discretization dz = discretize(w, g);
    const bool vanish = mode == Mode::vanishing;

    // The B_* maximizer defines a feasible test function whose ratio is at
    // least the B_* objective, with norms taken from exact masses.
    SupOutcome target = vanish ? vanishing::compute_b_lower(w, p, q) : meanzero::compute_b_lower_mz(w, p, q);
    const double target_value = target.value.is_finite() ? target.value.value : kNaN;
    if (std::isfinite(target_value)) r.seed_certificate = target_value;
    else r.diagnostics.push_back("B_* is not finite; no certified seed");

    const std::vector<double> H = cumulative_nuhat(w, g, p);
    std::vector<std::vector<double>> seeds;
    const double tx = std::clamp(target.x, g.nodes.front(), g.nodes.back());
    const double ty = std::clamp(target.y, g.nodes.front(), g.nodes.back());
    if (vanish) {
        seeds.push_back(plateau_seed(g, H, tx, ty));
        const SupOutcome bs = vanishing::compute_b_star(w, p, q);
        seeds.push_back(plateau_seed(g, H, std::clamp(bs.x, g.nodes.front(), g.nodes.back()),
                                     std::clamp(bs.y, g.nodes.front(), g.nodes.back())));
    } else {
        const double Hx = at(g.nodes, H, tx), Hy = at(g.nodes, H, ty);
        for (double frac : {0.5, 0.25, 0.75}) {
            const double Ht = Hx + frac * (Hy - Hx);
            const auto it = std::lower_bound(H.begin(), H.end(), Ht);
            const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(it - H.begin()), H.size() - 1);
            seeds.push_back(step_seed(g, H, tx, ty, g.nodes[j]));
        }
    }
    std::mt19937_64 rng(opt.seed);
    while (static_cast<int>(seeds.size()) < opt.restarts) seeds.push_back(random_seed(g.nodes.size(), vanish, rng));
    seeds.resize(std::max(1, opt.restarts));
    if (vanish)
        for (auto& s : seeds) s = std::vector<double>(s.begin() + 1, s.end() - 1);

    RatioObjective obj(dz, p, q, vanish);
    const double best = run_restarts(obj, dz, p, seeds, opt.max_iterations, opt.parallel);
    r.restarts = static_cast<int>(seeds.size());
    r.best_discrete = std::isfinite(best) ? std::exp(best) : 0.0;
    r.a_estimate = std::max(r.best_discrete, r.seed_certificate);
    if (std::isfinite(target_value) && r.best_discrete < target_value * (1.0 - 1e-3)) {
        r.inconsistent = true;
        r.diagnostics.push_back("every restart stagnated below B_*; discretization or search is inconsistent");
    }
    return r;
}

OracleResult entropy_search(const WeightedInterval& w, const SearchOptions& opt) {
    if (!w.total(Balance::mu()).is_finite()) throw ValidationError("entropy_search needs finite mu mass");
    OracleResult r;
    r.kind = Kind::entropy_search;
    r.certified_side = CertifiedSide::lower_bound;
    r.n = opt.grid_n;
    GridOptions go = opt.grid;
    go.p = 2.0;
    const Grid g = make_grid(w, opt.grid_n, go);
    r.truncation = g.truncation;
    const Discretization dz = discretize(w, g);

    const functional::LogSobolevReport ls = functional::logsobolev_bounds(w);
    const double target = ls.b_lower_full.is_finite() ? ls.b_lower_full.value : kNaN;

    const std::vector<double> H = cumulative_nuhat(w, g, 2.0);
    std::vector<std::vector<double>> seeds;
    const auto& am = ls.argmax_b_lower_full;
    if (std::isfinite(target)) {
        const double tx = std::clamp(am.x, g.nodes.front(), g.nodes.back());
        const double ty = std::clamp(am.y, g.nodes.front(), g.nodes.back());
        const double theta = std::clamp(ls.median, tx, ty);
        for (double th : {theta, 0.5 * (tx + ty)}) {
            const std::vector<double> base = step_seed(g, H, tx, ty, th);
            const auto [mn, mx] = std::minmax_element(base.begin(), base.end());
            const double span = std::max(*mx - *mn, 1e-300);
            for (double shift : {0.0, -*mn + 1e-3 * span, -*mx - 1e-3 * span, -*mn + span}) {
                std::vector<double> s = base;
                for (double& v : s) v += shift;
                seeds.push_back(std::move(s));
            }
        }
    }
    std::mt19937_64 rng(opt.seed);
    while (static_cast<int>(seeds.size()) < opt.restarts) seeds.push_back(random_seed(g.nodes.size(), false, rng));
    seeds.resize(std::max(1, opt.restarts));

    EntropyObjective obj(dz);
    const double best = run_restarts(obj, dz, 2.0, seeds, opt.max_iterations, opt.parallel);
    r.restarts = static_cast<int>(seeds.size());
    r.best_discrete = std::isfinite(best) ? std::exp(best) : 0.0;
    r.a_estimate = r.best_discrete;
    if (std::isfinite(target) && r.best_discrete < target - 1e-6) {
        r.inconsistent = true;
        r.diagnostics.push_back("every restart stagnated below the log-Sobolev B_*");
    }
    return r;
}

}  // namespace bihardy::oracle
