#include "bihardy/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bihardy::search {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool better(double v, double x, double y, double bv, double bx, double by) {
    if (std::isnan(v)) return false;
    if (std::isnan(bv)) return true;
    const double tol = 1e-12 * std::max(std::fabs(v), std::fabs(bv));
    if (v > bv + tol) return true;
    if (v < bv - tol) return false;
    if (x != bx) return x < bx;
    return y < by;
}

}  // namespace

const char* to_string(LimitClass c) {
    switch (c) {
        case LimitClass::zero: return "zero";
        case LimitClass::finite: return "finite";
        case LimitClass::infinite: return "infinite";
        case LimitClass::unknown: return "unknown";
    }
    return "unknown";
}

ExtendedReal LimitProbe::as_extended() const {
    switch (cls) {
        case LimitClass::zero: return ExtendedReal::zero();
        case LimitClass::finite: return ExtendedReal::of(limit);
        case LimitClass::infinite: return ExtendedReal::infinite("limit probe diverges " + direction);
        case LimitClass::unknown: break;
    }
    ExtendedReal r = ExtendedReal::unknown("inconclusive limit probe " + direction);
    r.value = limit;
    return r;
}

namespace {

LimitProbe classify_core(std::vector<std::pair<double, double>> samples) {
    LimitProbe out;
    out.samples = std::move(samples);
    std::vector<double> v;
    for (const auto& s : out.samples) {
        if (std::isnan(s.second)) break;
        if (std::isinf(s.second)) {
            out.cls = LimitClass::infinite;
            out.limit = s.second;
            return out;
        }
        v.push_back(s.second);
    }
    if (v.empty()) return out;
    const std::size_t n = v.size();
    const double last = v.back();
    out.limit = last;
    if (n >= 4 && std::fabs(v[n - 1]) < 1e-12 && std::fabs(v[n - 2]) < 1e-12) {
        out.cls = LimitClass::zero;
        out.limit = 0.0;
        return out;
    }
    auto spread = [&](std::size_t k) {
        double lo = v[n - k], hi = v[n - k];
        for (std::size_t i = n - k; i < n; ++i) {
            lo = std::min(lo, v[i]);
            hi = std::max(hi, v[i]);
        }
        return (hi - lo) / std::max(std::fabs(last), 1e-300);
    };
    // Short runs happen when the masses overflow far out; a flat tail still counts.
    if (n >= 4 && n < 8 && spread(4) < 1e-8) {
        out.cls = LimitClass::finite;
        return out;
    }
    if (n < 8) return out;
    if (spread(8) < 1e-4 || spread(4) < 1e-8) {
        out.cls = LimitClass::finite;
        return out;
    }

    bool inc = true, dec = true;
    for (std::size_t i = n - 8 + 1; i < n; ++i) {
        if (!(v[i] > v[i - 1])) inc = false;
        if (!(v[i] < v[i - 1])) dec = false;
    }
    if (inc && last > 1e8) {
        out.cls = LimitClass::infinite;
        return out;
    }
    if (!inc && !dec) return out;

    // Aitken extrapolation from the last three terms: a geometric approach to
    // the limit gives it exactly, a power law in the sample point gives 0 or
    // a blow-up.
    auto aitken = [&](std::size_t k) {
        const double a = v[k - 2], b = v[k - 1], c = v[k];
        const double d1 = b - a, d2 = c - b;
        const double den = d2 - d1;
        if (den == 0.0) return kNaN;
        return c - d2 * d2 / den;
    };
    const double r1 = (v[n - 1] - v[n - 2]) / (v[n - 2] - v[n - 3]);
    const double r2 = (v[n - 4] - v[n - 5]) / (v[n - 5] - v[n - 6]);
    const double slope = (std::log(std::fabs(v[n - 1])) - std::log(std::fabs(v[n - 8]))) / 7.0;
    if (inc) {
        // Increments not shrinking: unbounded growth.
        if (r1 >= 1.0 - 1e-3 && r2 >= 1.0 - 1e-3 && slope > 1e-4) {
            out.cls = LimitClass::infinite;
            return out;
        }
    }
    if (dec && slope < -1e-4) {
        const double lim = aitken(n - 1);
        if (!std::isnan(lim) && lim <= 1e-3 * last) {
            out.cls = LimitClass::zero;
            out.limit = 0.0;
            return out;
        }
    }
    // Geometric convergence to a nonzero limit, resolved by extrapolation.
    const double l1 = aitken(n - 1), l2 = aitken(n - 2), l3 = aitken(n - 3);
    if (r1 > 0.0 && r1 < 0.99 && r2 > 0.0 && r2 < 0.99 && std::isfinite(l1) && std::isfinite(l2) &&
        std::isfinite(l3) && l1 > 0.0) {
        const double s = std::max({std::fabs(l1 - l2), std::fabs(l1 - l3), std::fabs(l2 - l3)});
        if (s < 1e-6 * l1) {
            out.cls = LimitClass::finite;
            out.limit = l1;
        }
    }
    return out;
}

}  // namespace

LimitProbe classify_samples(std::vector<std::pair<double, double>> samples) {
    LimitProbe out = classify_core(std::move(samples));
    if (out.cls != LimitClass::unknown) {
        out.bounded = out.cls != LimitClass::infinite;
        return out;
    }
    // A nonnegative tail that never increases has a finite limit below its last value.
    std::vector<double> v;
    for (const auto& sm : out.samples) {
        if (!std::isfinite(sm.second)) break;
        v.push_back(sm.second);
    }
    const std::size_t n = v.size();
    if (n >= 8) {
        bool nonincreasing = v[n - 1] >= 0.0;
        for (std::size_t i = n - 7; i < n; ++i)
            if (v[i] > v[i - 1]) nonincreasing = false;
        out.bounded = nonincreasing;
    }
    return out;
}

LimitProbe probe_limit(const std::function<double(double)>& g, double from, double toward, int terms,
                       double end_floor) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(terms);
    if (std::isinf(toward)) {
        const double d = std::max(1.0, 1e-3 * std::fabs(from));
        const double sgn = toward > 0 ? 1.0 : -1.0;
        for (int k = 1; k <= terms; ++k) {
            const double t = from + sgn * d * std::ldexp(1.0, k);
            double val;
            try {
                val = g(t);
            } catch (const std::exception&) {
                val = kNaN;
            }
            samples.emplace_back(t, val);
            if (!std::isfinite(val)) break;
        }
    } else {
        const double gap = toward - from;
        // Closer than this the masses next to the end are too small for the
        // inner limits to reach their asymptotic regime.
        const double floor = end_floor * std::max(std::fabs(toward), std::fabs(gap));
        double prev = from;
        for (int k = 1; k <= terms; ++k) {
            const double t = toward - gap * std::ldexp(1.0, -k);
            if (t == prev || t == toward || std::fabs(toward - t) < floor) break;
            prev = t;
            double val;
            try {
                val = g(t);
            } catch (const std::exception&) {
                val = kNaN;
            }
            samples.emplace_back(t, val);
            if (!std::isfinite(val)) break;
        }
    }
    LimitProbe out = classify_samples(std::move(samples));
    out.direction = std::isinf(toward) ? (toward > 0 ? "toward +inf" : "toward -inf")
                                       : "toward " + std::to_string(toward);
    return out;
}

// ------------------------------------------------------------ Nelder-Mead

namespace {

struct NMResult {
    std::array<double, 2> x;
    double f;
    int evals;
    bool converged;
};

// Minimizes F over R^2.
NMResult nelder_mead(const std::function<double(const std::array<double, 2>&)>& F,
                     std::array<double, 2> x0, std::array<double, 2> step, int max_evals) {
    std::array<std::array<double, 2>, 3> s{x0, x0, x0};
    s[1][0] += step[0];
    s[2][1] += step[1];
    std::array<double, 3> fv;
    int evals = 0;
    auto eval = [&](const std::array<double, 2>& p) {
        ++evals;
        const double v = F(p);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    for (int i = 0; i < 3; ++i) fv[i] = eval(s[i]);
    bool converged = false;
    while (evals < max_evals) {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const auto b = s[idx[0]], m = s[idx[1]], w = s[idx[2]];
        const double fb = fv[idx[0]], fm = fv[idx[1]], fw = fv[idx[2]];
        double size = 0.0;
        for (int i = 1; i < 3; ++i)
            size = std::max({size, std::fabs(s[idx[i]][0] - b[0]), std::fabs(s[idx[i]][1] - b[1])});
        const double fscale = std::max(std::fabs(fb), 1e-300);
        if (size < 1e-10 || (std::isfinite(fw) && std::fabs(fw - fb) <= 1e-15 * fscale && size < 1e-6)) {
            converged = true;
            break;
        }
        const std::array<double, 2> c{0.5 * (b[0] + m[0]), 0.5 * (b[1] + m[1])};
        auto along = [&](double t) {
            return std::array<double, 2>{c[0] + t * (w[0] - c[0]), c[1] + t * (w[1] - c[1])};
        };
        const auto r = along(-1.0);
        const double fr = eval(r);
        if (fr < fb) {
            const auto e = along(-2.0);
            const double fe = eval(e);
            if (fe < fr) {
                s[idx[2]] = e;
                fv[idx[2]] = fe;
            } else {
                s[idx[2]] = r;
                fv[idx[2]] = fr;
            }
            continue;
        }
        if (fr < fm) {
            s[idx[2]] = r;
            fv[idx[2]] = fr;
            continue;
        }
        const bool outside = fr < fw;
        const auto k = along(outside ? -0.5 : 0.5);
        const double fk = eval(k);
        if (fk < (outside ? fr : fw)) {
            s[idx[2]] = k;
            fv[idx[2]] = fk;
            continue;
        }
        for (int i = 1; i < 3; ++i) {
            auto& p = s[idx[i]];
            p = {b[0] + 0.5 * (p[0] - b[0]), b[1] + 0.5 * (p[1] - b[1])};
            fv[idx[i]] = eval(p);
        }
    }
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (fv[i] < fv[best]) best = i;
    return {s[best], fv[best], evals, converged};
}

}  // namespace

PairResult maximize_pair(const std::function<double(double, double)>& f, const std::vector<double>& pts,
                         const Chart& chart, const PairOptions& opt) {
    PairResult out;
    out.value = kNaN;
    const std::size_t n = pts.size();
    struct Cell {
        double v;
        std::size_t i, j;
    };
    std::vector<Cell> cells;
    std::vector<double> finite_vals;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v;
            try {
                v = f(pts[i], pts[j]);
            } catch (const std::exception&) {
                v = kNaN;
            }
            ++out.evaluations;
            if (std::isnan(v)) continue;
            cells.push_back({v, i, j});
            if (std::isfinite(v) && v > 0.0) finite_vals.push_back(v);
            if (better(v, pts[i], pts[j], out.value, out.x, out.y)) {
                out.value = v;
                out.x = pts[i];
                out.y = pts[j];
            }
        }
    }
    if (!finite_vals.empty()) {
        auto mid = finite_vals.begin() + finite_vals.size() / 2;
        std::nth_element(finite_vals.begin(), mid, finite_vals.end());
        out.grid_median = *mid;
    }
    if (cells.empty()) return out;
    if (std::isinf(out.value)) {
        out.diverging = true;
        return out;
    }

    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.v != b.v) return a.v > b.v;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    auto xi_of = [&](std::size_t i) { return chart.to_xi(pts[i]); };
    auto spacing = [&](std::size_t i) {
        double d = 1.0;
        if (i + 1 < n) d = std::min(d, std::fabs(xi_of(i + 1) - xi_of(i)));
        if (i > 0) d = std::min(d, std::fabs(xi_of(i) - xi_of(i - 1)));
        return std::clamp(d, 1e-3, 2.0);
    };
    auto F = [&](const std::array<double, 2>& z) {
        double a = chart.to_x(z[0]), b = chart.to_x(z[1]);
        if (a > b) std::swap(a, b);
        double v;
        try {
            v = f(a, b);
        } catch (const std::exception&) {
            return kNaN;
        }
        return -v;
    };

    const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(opt.starts), cells.size());
    for (std::size_t s = 0; s < starts; ++s) {
        const Cell& c = cells[s];
        std::array<double, 2> z{xi_of(c.i), xi_of(c.j)};
        std::array<double, 2> step{spacing(c.i) * 0.5, spacing(c.j) * 0.5};
        NMResult r = nelder_mead(F, z, step, opt.max_evals);
        out.evaluations += r.evals;
        // One restart from the optimum guards against a collapsed simplex.
        NMResult r2 = nelder_mead(F, r.x, {1e-3, 1e-3}, opt.max_evals);
        out.evaluations += r2.evals;
        if (r2.f <= r.f) r = r2;
        if (!r.converged && !r2.converged) out.stale = true;
        double a = chart.to_x(r.x[0]), b = chart.to_x(r.x[1]);
        if (a > b) std::swap(a, b);
        const double v = -r.f;
        if (better(v, a, b, out.value, out.x, out.y)) {
            out.value = v;
            out.x = a;
            out.y = b;
        }
    }
    const double edge = 0.9 * std::min(std::fabs(chart.xi_lo()), std::fabs(chart.xi_hi()));
    const double zx = chart.to_xi(out.x), zy = chart.to_xi(out.y);
    out.at_boundary = std::fabs(zx) > edge || std::fabs(zy) > edge || std::isinf(out.x) ||
                      std::isinf(out.y);
    if (out.grid_median > 0.0 && out.value > 1e8 * out.grid_median && out.at_boundary) out.diverging = true;
    return out;
}

LineResult maximize_line(const std::function<double(double)>& g, const std::vector<double>& pts,
                         const Chart& chart, double xi_tol) {
    LineResult out;
    out.value = kNaN;
    auto safe = [&](double x) {
        try {
            const double v = g(x);
            return v;
        } catch (const std::exception&) {
            return kNaN;
        }
    };
    std::size_t best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double v = safe(pts[i]);
        if (better(v, pts[i], 0.0, out.value, out.x, 0.0)) {
            out.value = v;
            out.x = pts[i];
            best = i;
        }
    }
    if (std::isnan(out.value) || pts.size() < 2) return out;
    double lo = best > 0 ? chart.to_xi(pts[best - 1]) : chart.to_xi(pts[best]) - 1.0;
    double hi = best + 1 < pts.size() ? chart.to_xi(pts[best + 1]) : chart.to_xi(pts[best]) + 1.0;
    lo = std::max(lo, chart.xi_lo());
    hi = std::min(hi, chart.xi_hi());
    auto G = [&](double z) {
        const double v = safe(chart.to_x(z));
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = G(c), fd = G(d);
    for (int it = 0; it < 200 && hi - lo > xi_tol * std::max(1.0, std::fabs(lo)); ++it) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = G(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = G(d);
        }
    }
    const double z = fc >= fd ? c : d;
    const double v = std::max(fc, fd);
    if (v > out.value) {
        out.value = v;
        out.x = chart.to_x(z);
    }
    const double edge = 0.9 * std::min(std::fabs(chart.xi_lo()), std::fabs(chart.xi_hi()));
    out.at_boundary = std::fabs(chart.to_xi(out.x)) > edge;
    return out;
}

std::vector<double> scan_points(const WeightedInterval& w, std::optional<Balance> b, int n) {
    const bool by_mass = b && w.side_finite(*b, Side::left) && w.side_finite(*b, Side::right);
    std::string key = "scan:" + std::to_string(n) + ":";
    if (by_mass) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "nuhat:%.17g", b->p);
        key += b->kind == MeasureKind::mu ? std::string("mu") : std::string(buf);
    }
    else
        key += "chart";
    return w.memo_points(key, [&] {
        std::vector<double> pts;
        pts.reserve(n);
        if (by_mass) {
            for (int i = 0; i < n; ++i) pts.push_back(quantile(w, *b, (i + 0.5) / n));
        } else {
            const Chart& ch = w.chart();
            const bool fin = w.left_endpoint().is_finite() && w.right_endpoint().is_finite();
            const double c = fin ? 0.0 : ch.to_xi(w.reference_point());
            for (int i = 0; i < n; ++i) pts.push_back(ch.to_x(c - 25.0 + 50.0 * (i + 0.5) / n));
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    });
}

namespace {

// Limit of H(x, .) toward the right end, or H(., y) toward the left end.
LimitProbe inner_probe(const std::function<double(double, double)>& H, const WeightedInterval& w,
                       bool to_right, double fixed) {
    if (to_right) return probe_limit([&](double y) { return H(fixed, y); }, fixed, w.right());
    return probe_limit([&](double x) { return H(x, fixed); }, fixed, w.left());
}

double probe_value(const LimitProbe& pr) {
    switch (pr.cls) {
        case LimitClass::zero: return 0.0;
        case LimitClass::finite: return pr.limit;
        case LimitClass::infinite: return std::numeric_limits<double>::infinity();
        case LimitClass::unknown: break;
    }
    return kNaN;
}

}  // namespace

BoundaryResult boundary_sup(const std::function<double(double, double)>& H, const WeightedInterval& w,
                            bool left, bool right, const std::vector<double>& pts) {
    BoundaryResult out;
    if (!left && !right) {
        out.notes.push_back("no boundary with infinite adjacent mass");
        return out;
    }
    double best = 0.0;
    bool any_unknown = false;
    bool any_infinite = false;
    bool all_bounded = true;
    std::vector<double> sample;
    const std::size_t m = std::min<std::size_t>(9, pts.size());
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t idx = m == 1 ? 0 : k * (pts.size() - 1) / (m - 1);
        sample.push_back(pts[idx]);
    }
    sample.erase(std::unique(sample.begin(), sample.end()), sample.end());

    auto absorb = [&](const LimitProbe& pr) {
        out.probes.push_back(pr);
        const double v = probe_value(pr);
        if (!pr.bounded && pr.cls != LimitClass::infinite) all_bounded = false;
        if (std::isnan(v)) {
            any_unknown = true;
        } else if (std::isinf(v)) {
            any_infinite = true;
        } else {
            best = std::max(best, v);
        }
        return v;
    };

    std::array<double, 2> iterated{kNaN, kNaN};
    for (int side = 0; side < 2; ++side) {
        const bool to_right = side == 0;
        if (to_right ? !right : !left) continue;
        // G(s) = limit of H as the free variable runs to the triggered end.
        // Unclassified inner limits are NaN, so outer probes stop there.
        auto G = [&](double s) {
            LimitProbe pr = inner_probe(H, w, to_right, s);
            return probe_value(pr);
        };
        std::vector<double> vals;
        for (double s : sample) vals.push_back(absorb(inner_probe(H, w, to_right, s)));
        if (any_infinite) break;
        LineResult lr = maximize_line(G, sample, w.chart(), 1e-6);
        if (std::isfinite(lr.value)) best = std::max(best, lr.value);
        if (std::isinf(lr.value)) any_infinite = true;
        // Outer limits of G toward both ends; the one toward the opposite end
        // is the iterated limit when both ends are triggered.
        for (int e = 0; e < 2 && !any_infinite; ++e) {
            const double toward = e == 0 ? w.left() : w.right();
            const double from = e == 0 ? sample.front() : sample.back();
            LimitProbe outer = probe_limit(G, from, toward);
            outer.direction = std::string(to_right ? "lim_y then " : "lim_x then ") + outer.direction;
            const double v = absorb(outer);
            if (left && right && ((to_right && e == 0) || (!to_right && e == 1))) iterated[side] = v;
        }
        if (any_infinite) break;
    }
    if (left && right && !any_infinite && !std::isnan(iterated[0]) && !std::isnan(iterated[1]) &&
        std::fabs(iterated[0] - iterated[1]) > 1e-6 * std::max(1.0, std::max(iterated[0], iterated[1])))
        out.notes.push_back("iterated limits disagree; supremum of both orders taken");
    out.bounded = !any_infinite && all_bounded;
    if (any_infinite) {
        out.value = ExtendedReal::infinite("boundary limit diverges");
    } else if (any_unknown) {
        out.value = ExtendedReal::unknown("boundary limit probe inconclusive");
        out.value.value = best;
    } else {
        out.value = ExtendedReal::of(best);
    }
    return out;
}

}  // namespace bihardy::search
