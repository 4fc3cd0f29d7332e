#include "bihardy/functional.hpp"

#include <algorithm>
#include <cmath>

#include "bihardy/errors.hpp"
#include "bounds_internal.hpp"

namespace bihardy::functional {

using detail::m;

namespace {

ExtendedReal squared(const ExtendedReal& e) {
    ExtendedReal out = e;
    if (e.cls == ValueClass::finite) out.value = e.value * e.value;
    return out;
}

double pi_total(const WeightedInterval& w) {
    const ExtendedReal t = w.total(Balance::mu());
    if (!t.is_finite() || !(t.value > 0.0)) throw ValidationError("a finite total mu mass is required");
    return t.value;
}

// t log(1 + c/t), continuously extended by 0 at t = 0.
double tlog(double t, double c) {
    if (!(t > 0.0)) return 0.0;
    return t * std::log1p(c / t);
}

double bracket(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) return 0.0;
    return 1.0 / (1.0 / a + 1.0 / b);
}

}  // namespace

NashReport sobolev_bounds(const WeightedInterval& w, double gamma, const meanzero::Options& opt,
                          std::optional<double> theta) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be a positive real");
    NashReport rep;
    rep.gamma = gamma;
    if (gamma <= 2.0) {
        const SmallGammaResult sg = nash_small_gamma(w, gamma, theta);
        rep.verdict = sg.verdict;
        rep.diagnostics = sg.notes;
        const ExtendedReal na = ExtendedReal::unknown("no Sobolev-type reduction for gamma <= 2");
        rep.b_s_star = rep.b_s_lower = rep.upper = rep.lower = na;
        if (sg.verdict == Verdict::no) rep.b_s_star = rep.b_s_lower = rep.lower = ExtendedReal::infinite("inequality fails");
        return rep;
    }
    rep.q = 2.0 * gamma / (gamma - 2.0);
    const meanzero::MeanZeroReport mz = meanzero::compute_mz_bounds(w, 2.0, rep.q, opt);
    rep.b_s_star = squared(mz.b_star);
    rep.b_s_lower = squared(mz.b_lower);
    rep.upper = scale(rep.b_s_star, 4.0);
    rep.lower = rep.b_s_lower;
    rep.verdict = mz.holds;
    rep.diagnostics = mz.diagnostics;
    return rep;
}

SmallGammaResult nash_small_gamma(const WeightedInterval& w, double gamma, std::optional<double> theta) {
    if (!(gamma > 0.0) || gamma > 2.0) throw ValidationError("nash_small_gamma needs gamma in (0, 2]");
    pi_total(w);
    SmallGammaResult out;
    out.theta = theta ? *theta : median(w, Balance::mu());
    const double th = out.theta;
    if (!(th > w.left() && th < w.right())) throw ValidationError("theta must lie inside the interval");
    bool any_side = false;
    bool all_ok = true;
    auto check_side = [&](bool right) {
        const bool infinite_end = right ? !w.right_endpoint().is_finite() : !w.left_endpoint().is_finite();
        if (!infinite_end) return;
        any_side = true;
        const ExtendedReal nu_tail = right ? w.nuhat_mass(2.0, th, w.right()) : w.nuhat_mass(2.0, w.left(), th);
        if (!nu_tail.is_infinite()) {
            out.notes.push_back(std::string(right ? "right" : "left") + " nuhat tail is finite");
            all_ok = false;
            return;
        }
        auto g = [&](double t) {
            return right ? m(w.mu_mass(t, w.right())) * m(w.nuhat_mass(2.0, th, t))
                         : m(w.mu_mass(w.left(), t)) * m(w.nuhat_mass(2.0, t, th));
        };
        const search::LimitProbe pr = search::probe_limit(g, th, right ? w.right() : w.left());
        if (pr.cls == search::LimitClass::finite && pr.limit > 0.0) {
            out.notes.push_back(std::string(right ? "right" : "left") + " tail product tends to " +
                                std::to_string(pr.limit));
        } else {
            out.notes.push_back(std::string(right ? "right" : "left") + " tail product is " +
                                search::to_string(pr.cls) + "; hypotheses not met");
            all_ok = false;
        }
    };
    check_side(false);
    check_side(true);
    if (!any_side) {
        out.notes.push_back("no infinite endpoint; the non-existence test does not apply");
        return out;
    }
    out.verdict = all_ok ? Verdict::no : Verdict::unknown;
    return out;
}

double logsobolev_phi(const WeightedInterval& w, double x, double theta) {
    const double tot = pi_total(w);
    const double P = m(w.mu_mass(w.left(), x)) / tot;
    const double T = m(w.mu_mass(w.left(), theta)) / tot;
    return tlog(P, 1.0 - T);
}

double logsobolev_psi(const WeightedInterval& w, double theta, double y) {
    const double tot = pi_total(w);
    const double Q = m(w.mu_mass(y, w.right())) / tot;
    const double T = m(w.mu_mass(theta, w.right())) / tot;
    return tlog(Q, 1.0 - T);
}

double zstar_residual(double P, double Q, double z) {
    const double l = tlog(P, z);
    const double r = tlog(Q, 1.0 - z);
    return l * l * (1.0 + z / P) - r * r * (1.0 + (1.0 - z) / Q);
}

double solve_zstar(double P, double Q, double tol) {
    if (!(P > 0.0) || !(Q > 0.0)) throw DomainError("z* needs positive outer masses");
    // LHS increases from 0 and RHS decreases to 0 on [0, 1].
    double lo = 0.0, hi = 1.0;
    double mid = 0.5;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double r = zstar_residual(P, Q, mid);
        if (r == 0.0) break;
        (r > 0.0 ? hi : lo) = mid;
    }
    if (std::fabs(zstar_residual(P, Q, mid)) > tol)
        throw NumericalError("z* residual above tolerance");
    return mid;
}

double solve_zstar(const WeightedInterval& w, double x, double y, double tol) {
    if (!(x < y)) throw ValidationError("z* needs x < y");
    const double tot = pi_total(w);
    return solve_zstar(m(w.mu_mass(w.left(), x)) / tot, m(w.mu_mass(y, w.right())) / tot, tol);
}

double ls_objective_bstar(const WeightedInterval& w, double x, double y) {
    if (!(x < y)) return 0.0;
    const double tot = pi_total(w);
    const double P = m(w.mu_mass(w.left(), x)) / tot;
    const double Q = m(w.mu_mass(y, w.right())) / tot;
    const double e2 = std::exp(2.0);
    return m(w.nuhat_mass(2.0, x, y)) * bracket(tlog(P, e2), tlog(Q, e2));
}

double ls_objective_blower(const WeightedInterval& w, double x, double y) {
    if (!(x < y)) return 0.0;
    const double tot = pi_total(w);
    const double P = m(w.mu_mass(w.left(), x)) / tot;
    const double Q = m(w.mu_mass(y, w.right())) / tot;
    if (!(P > 0.0) || !(Q > 0.0)) return 0.0;
    // z = 1 - pi[-M, theta] with theta in (x, y) ranges over (Q, 1 - P).
    const double z = std::clamp(solve_zstar(P, Q), Q, 1.0 - P);
    return m(w.nuhat_mass(2.0, x, y)) * bracket(tlog(P, z), tlog(Q, 1.0 - z));
}

double ls_objective_median(const WeightedInterval& w, double med, double x, double y) {
    if (!(x < med && med < y)) return 0.0;
    const double tot = pi_total(w);
    const double P = m(w.mu_mass(w.left(), x)) / tot;
    const double Q = m(w.mu_mass(y, w.right())) / tot;
    return m(w.nuhat_mass(2.0, x, y)) * bracket(tlog(P, 0.5), tlog(Q, 0.5));
}

LogSobolevReport logsobolev_bounds(const WeightedInterval& w, const LogSobolevOptions& opt) {
    LogSobolevReport rep;
    rep.pi_total = pi_total(w);
    rep.median = median(w, Balance::mu());
    std::vector<double> pts = search::scan_points(w, Balance::mu(), opt.grid);
    const search::BoundaryResult none;  // no boundary term in this setting

    rep.argmax_b_star = detail::two_point_sup([&](double x, double y) { return ls_objective_bstar(w, x, y); },
                                              w, pts, none, opt.pair);
    rep.argmax_b_lower_full = detail::two_point_sup(
        [&](double x, double y) { return ls_objective_blower(w, x, y); }, w, pts, none, opt.pair);

    std::vector<double> mpts = pts;
    mpts.push_back(rep.median);
    std::sort(mpts.begin(), mpts.end());
    mpts.erase(std::unique(mpts.begin(), mpts.end()), mpts.end());
    rep.argmax_b_lower_median = detail::two_point_sup(
        [&](double x, double y) { return ls_objective_median(w, rep.median, x, y); }, w, mpts, none, opt.pair);

    // theta = median is one admissible choice inside the full supremum.
    SupOutcome& full = rep.argmax_b_lower_full;
    const SupOutcome& med = rep.argmax_b_lower_median;
    if (full.value.is_finite() && med.value.is_finite() && med.x < med.y) {
        const double at_med = ls_objective_blower(w, med.x, med.y);
        if (at_med > full.value.value) {
            full.value = ExtendedReal::of(at_med);
            full.x = med.x;
            full.y = med.y;
        }
    }
    for (const SupOutcome* s : std::initializer_list<const SupOutcome*>{&rep.argmax_b_star, &full, &med}) {
        if (s->stale) rep.diagnostics.push_back("optimizer hit its evaluation budget");
    }

    // Residual of the z* solve at the reported optimum.
    if (full.x < full.y && full.x > w.left() && full.y < w.right()) {
        const double P = m(w.mu_mass(w.left(), full.x)) / rep.pi_total;
        const double Q = m(w.mu_mass(full.y, w.right())) / rep.pi_total;
        if (P > 0.0 && Q > 0.0) rep.max_zstar_residual = std::fabs(zstar_residual(P, Q, solve_zstar(P, Q)));
    }

    rep.b_star = rep.argmax_b_star.value;
    rep.b_lower_full = full.value;
    rep.b_lower_median = med.value;
    rep.upper = scale(rep.b_star, 4.0);
    rep.lower = rep.b_lower_full;
    return rep;
}

}  // namespace bihardy::functional
