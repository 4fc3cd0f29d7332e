#include "bihardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace bihardy::quad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980201113, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double lo, hi, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

struct Rule {
    double value = 0.0;
    double error = 0.0;
    bool finite = true;
};

template <class G>
Rule gk21(const G& g, double lo, double hi) {
    const double centr = 0.5 * (lo + hi);
    const double hlgth = 0.5 * (hi - lo);
    const double fc = g(centr);
    double resg = 0.0;
    double resk = wgk[10] * fc;
    double resabs = std::fabs(resk);
    double fv1[10], fv2[10];
    for (int j = 0; j < 10; ++j) {
        const double absc = hlgth * xgk[j];
        const double f1 = g(centr - absc);
        const double f2 = g(centr + absc);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[10] * std::fabs(fc - reskh);
    for (int j = 0; j < 10; ++j)
        resasc += wgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    Rule r;
    r.value = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double err = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(kEps * 50.0 * resabs, err);
    r.error = err;
    r.finite = std::isfinite(r.value) && std::isfinite(r.error);
    return r;
}

template <class G>
IntegralResult adapt(const G& g, const std::vector<double>& breaks, const Options& opt) {
    IntegralResult out;
    std::priority_queue<Segment> heap;
    double total = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] < breaks[i + 1])) continue;
        Rule r = gk21(g, breaks[i], breaks[i + 1]);
        if (!r.finite) {
            out.classification = Classification::divergent;
            out.value = kInf;
            out.est_error = kInf;
            out.diagnostics = "integrand overflow";
            return out;
        }
        heap.push({breaks[i], breaks[i + 1], r.value, r.error});
        total += r.value;
        err += r.error;
    }
    std::vector<Segment> frozen;
    int subdiv = 0;
    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };

    while (err > target() && !heap.empty()) {
        if (subdiv >= opt.max_subdivisions) {
            out.classification = Classification::divergent;
            out.diagnostics = "max subdivisions reached without convergence";
            break;
        }
        Segment s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.lo + s.hi);
        if (!(mid > s.lo && mid < s.hi) || (s.hi - s.lo) <= 4.0 * kEps * std::fabs(mid)) {
            frozen.push_back(s);
            continue;
        }
        Rule left = gk21(g, s.lo, mid);
        Rule right = gk21(g, mid, s.hi);
        ++subdiv;
        if (!left.finite || !right.finite) {
            out.classification = Classification::divergent;
            out.value = kInf;
            out.est_error = kInf;
            out.subdivisions = subdiv;
            out.diagnostics = "integrand overflow";
            return out;
        }
        total += left.value + right.value - s.value;
        err += left.error + right.error - s.error;
        heap.push({s.lo, mid, left.value, left.error});
        heap.push({mid, s.hi, right.value, right.error});
        // Resum occasionally so cancellation in the running totals cannot drift.
        if (subdiv % 256 == 0) {
            auto copy = heap;
            total = 0.0;
            err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
            for (const auto& f : frozen) {
                total += f.value;
                err += f.error;
            }
        }
    }
    out.value = total;
    out.est_error = err;
    out.subdivisions = subdiv;
    if (out.classification == Classification::finite && err > target()) {
        out.classification = Classification::divergent;
        out.diagnostics = "error estimate stuck at unresolvable scale";
    }
    if (!std::isfinite(total)) {
        out.classification = Classification::divergent;
        out.diagnostics = "partial sums overflow";
    }
    if (out.classification == Classification::divergent) {
        out.value = kInf;
    }
    return out;
}

IntegralResult combine(IntegralResult a, const IntegralResult& b) {
    if (!a.finite()) return a;
    if (!b.finite()) return b;
    a.value += b.value;
    a.est_error += b.est_error;
    a.subdivisions += b.subdivisions;
    return a;
}

// Wide finite spans are seeded with breakpoints growing by 16x from both
// ends, so mass concentrated near either end cannot hide between the
// Kronrod nodes of one huge panel.
std::vector<double> finite_breaks(double a, double b) {
    std::vector<double> lo{a}, hi{b};
    const double mid = 0.5 * (a + b);
    const double d0 = std::max(1.0, 1e-3 * std::min(std::fabs(a), std::fabs(b)));
    if (b - a > 64.0 * d0) {
        for (double d = d0; a + d < mid; d *= 16.0) lo.push_back(a + d);
        for (double d = d0; b - d > mid; d *= 16.0) hi.push_back(b - d);
        lo.push_back(mid);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

// Breakpoints in the mapped variable s: 16^-k, reaching ~1e12 past the
// scale of the finite end so both unit-scale and far-out mass get panels.
std::vector<double> mapped_breaks(double end) {
    const int K = 10 + static_cast<int>(std::ceil(std::log2(std::max(1.0, std::fabs(end))) / 4.0));
    std::vector<double> br{0.0};
    for (int k = K; k >= 0; --k) br.push_back(std::ldexp(1.0, -4 * k));
    return br;
}

}  // namespace

IntegralResult integrate(const Integrand& f, double a, double b, const Options& opt) {
    if (std::isnan(a) || std::isnan(b)) return {kInf, kInf, Classification::divergent, 0, "NaN bound"};
    if (a == b) return {};
    if (a > b) return {kInf, kInf, Classification::divergent, 0, "reversed bounds"};
    const bool ainf = std::isinf(a);
    const bool binf = std::isinf(b);
    if (!ainf && !binf) {
        return adapt(f, finite_breaks(a, b), opt);
    }
    if (ainf && binf) {
        Options half = opt;
        half.abs_tol = opt.abs_tol * 0.5;
        return combine(integrate(f, -kInf, opt.center, half), integrate(f, opt.center, kInf, half));
    }
    if (binf) {
        // x = a + L(1 - s)/s with s in (0, 1]; small s keeps full resolution far out.
        auto g = [&](double s) {
            const double x = a + (1.0 - s) / s;
            if (std::isinf(x)) return 0.0;
            return f(x) / s / s;
        };
        return adapt(g, mapped_breaks(a), opt);
    }
    auto g = [&](double s) {
        const double x = b - (1.0 - s) / s;
        if (std::isinf(x)) return 0.0;
        return f(x) / s / s;
    };
    return adapt(g, mapped_breaks(b), opt);
}

Tail divergence_probe(const Integrand& f, double toward, double from, const Options& opt) {
    constexpr int kTerms = 40;
    std::vector<double> pts;
    pts.reserve(kTerms + 1);
    pts.push_back(from);
    if (std::isinf(toward)) {
        const double d = std::max(1.0, std::fabs(from));
        const double sgn = toward > 0 ? 1.0 : -1.0;
        for (int k = 0; k < kTerms; ++k) pts.push_back(from + sgn * d * std::ldexp(1.0, k));
    } else {
        const double gap = toward - from;
        for (int k = 1; k <= kTerms; ++k) {
            const double x = toward - gap * std::ldexp(1.0, -k);
            if (x == pts.back()) break;
            pts.push_back(x);
        }
    }
    std::vector<double> inc;
    double sum = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double lo = std::min(pts[i - 1], pts[i]);
        const double hi = std::max(pts[i - 1], pts[i]);
        IntegralResult r = integrate(f, lo, hi, opt);
        if (!r.finite()) return Tail::nonintegrable;
        inc.push_back(r.value);
        sum += r.value;
        if (!std::isfinite(sum)) return Tail::nonintegrable;
    }
    if (inc.size() < 10) return Tail::integrable;
    const double last = inc.back();
    if (last <= 1e-300 || last <= 1e-15 * sum) return Tail::integrable;
    // Ratio of consecutive increments: < 1 (steadily) means a geometric-type
    // convergent tail, >= 1 means the partial masses keep growing.
    double rmax = 0.0;
    for (std::size_t i = inc.size() - 8; i < inc.size(); ++i) {
        if (inc[i - 1] <= 0.0) continue;
        rmax = std::max(rmax, inc[i] / inc[i - 1]);
    }
    if (rmax >= 1.0 - 1e-3) return Tail::nonintegrable;
    return Tail::integrable;
}

}  // namespace bihardy::quad
