#include "bihardy/meanzero.hpp"

#include <cmath>

#include "bihardy/constants.hpp"
#include "bihardy/errors.hpp"
#include "bounds_internal.hpp"

namespace bihardy::meanzero {

using detail::m;

double objective_blower_mz(const WeightedInterval& w, double p, double q, double x, double y) {
    if (!(x < y)) return 0.0;
    const double a = m(w.mu_mass(w.left(), x));
    const double b = m(w.mu_mass(y, w.right()));
    const double nu = m(w.nuhat_mass(p, x, y));
    const double e = 1.0 / (1.0 - q);
    return std::pow(std::pow(a, e) + std::pow(b, e), 1.0 / e / q) * std::pow(nu, (p - 1.0) / p);
}

double objective_bstar_mz(const WeightedInterval& w, double p, double q, double x, double y) {
    if (!(x < y)) return 0.0;
    const double a = m(w.mu_mass(w.left(), x));
    const double b = m(w.mu_mass(y, w.right()));
    const double nu = m(w.nuhat_mass(p, x, y));
    const double s = p / ((1.0 - p) * q);
    return std::pow(std::pow(a, s) + std::pow(b, s), -(p - 1.0) / p) * std::pow(nu, (p - 1.0) / p);
}

namespace {

void check(const WeightedInterval& w, double p, double q) {
    if (!(p > 1.0) || !std::isfinite(p) || !(q > 1.0) || !std::isfinite(q))
        throw ValidationError("exponents must satisfy 1 < p, q < inf");
    if (!w.total(Balance::mu()).is_finite())
        throw ValidationError("mean-zero bounds need a finite total mu mass");
}

std::vector<double> scan(const WeightedInterval& w, const Options& opt) {
    return search::scan_points(w, detail::scan_balance(w, Balance::mu()), opt.grid);
}

}  // namespace

search::BoundaryResult compute_h_partial_mz(const WeightedInterval& w, double p, double q, const Options& opt) {
    check(w, p, q);
    const Balance nb = Balance::nuhat(p);
    const bool left = !w.side_finite(nb, Side::left);
    const bool right = !w.side_finite(nb, Side::right);
    return search::boundary_sup([&](double x, double y) { return objective_blower_mz(w, p, q, x, y); }, w,
                                left, right, scan(w, opt));
}

SupOutcome compute_b_star_mz(const WeightedInterval& w, double p, double q, const Options& opt) {
    return detail::two_point_sup([&](double x, double y) { return objective_bstar_mz(w, p, q, x, y); }, w,
                                 scan(w, opt), compute_h_partial_mz(w, p, q, opt), opt.pair);
}

SupOutcome compute_b_lower_mz(const WeightedInterval& w, double p, double q, const Options& opt) {
    return detail::two_point_sup([&](double x, double y) { return objective_blower_mz(w, p, q, x, y); }, w,
                                 scan(w, opt), compute_h_partial_mz(w, p, q, opt), opt.pair);
}

CurveOutcome compute_h_o_mz(const WeightedInterval& w, double p, double q, const Options& opt) {
    check(w, p, q);
    CurveOutcome out;
    const Balance mb = Balance::mu();
    const double med = median(w, mb);
    auto g = [&](double x) {
        if (!(x > w.left()) || x > med) return std::nan("");
        const double y = matching_point(w, mb, x);
        const double a = m(w.mu_mass(w.left(), x));
        const double nu = m(w.nuhat_mass(p, x, y));
        return std::pow(a, 1.0 / q) * std::pow(nu, (p - 1.0) / p);
    };
    std::vector<double> pts;
    for (double x : search::scan_points(w, mb, opt.grid))
        if (x < med) pts.push_back(x);
    pts.push_back(med);
    search::LineResult lr = search::maximize_line(g, pts, w.chart());
    double best = std::isnan(lr.value) ? 0.0 : lr.value;
    out.x = lr.x;
    search::LimitProbe lim = search::probe_limit(g, pts.front(), w.left(), 40, 0.0);
    if (lim.cls == search::LimitClass::infinite) {
        out.value = ExtendedReal::infinite("H^o integrand diverges toward the left end");
        out.x = w.left();
        return out;
    }
    if (lim.cls == search::LimitClass::finite && lim.limit > best) {
        best = lim.limit;
        out.x = w.left();
    }
    out.value = ExtendedReal::of(std::pow(2.0, 1.0 / q - 1.0) * best);
    return out;
}

MeanZeroReport compute_mz_bounds(const WeightedInterval& w, double p, double q, const Options& opt) {
    check(w, p, q);
    MeanZeroReport rep;
    rep.p = p;
    rep.q = q;
    rep.pi_total = w.total(Balance::mu()).value;

    const search::BoundaryResult bnd = compute_h_partial_mz(w, p, q, opt);
    rep.h_partial = bnd.value;
    for (const auto& n : bnd.notes) rep.diagnostics.push_back("H^partial: " + n);

    const auto pts = scan(w, opt);
    rep.argmax_b_star = detail::two_point_sup(
        [&](double x, double y) { return objective_bstar_mz(w, p, q, x, y); }, w, pts, bnd, opt.pair);
    rep.argmax_b_lower = detail::two_point_sup(
        [&](double x, double y) { return objective_blower_mz(w, p, q, x, y); }, w, pts, bnd, opt.pair);
    rep.b_star = rep.argmax_b_star.value;
    rep.b_lower = rep.argmax_b_lower.value;
    if (rep.argmax_b_star.stale) rep.diagnostics.push_back("B* optimizer hit its evaluation budget");
    if (rep.argmax_b_lower.stale) rep.diagnostics.push_back("B_* optimizer hit its evaluation budget");

    const CurveOutcome ho = compute_h_o_mz(w, p, q, opt);
    rep.h_o = ho.value;
    rep.h_o_argmax = ho.x;

    rep.lower = rep.b_lower;
    if (p <= 2.0 && q >= 2.0) {
        rep.k = constants::k_general(p, 2.0) * opt.k_perturbation;
        rep.upper = scale(rep.b_star, rep.k);
        rep.upper_valid = true;
    } else {
        rep.upper = ExtendedReal::unknown("upper bound only established for 1 < p <= 2 <= q");
        rep.upper_note = rep.upper.note;
    }

    const ExtendedReal crit = max(rep.h_o, rep.h_partial);
    rep.holds = crit.is_infinite() ? Verdict::no : crit.is_finite() ? Verdict::yes : Verdict::unknown;
    // A nonincreasing boundary probe still certifies H^partial < inf.
    if (rep.holds == Verdict::unknown && rep.h_o.is_finite() && bnd.bounded) {
        rep.holds = Verdict::yes;
        rep.diagnostics.push_back("H^partial unclassified but bounded; criterion finite");
    } else if (rep.holds == Verdict::unknown && rep.b_lower.is_infinite()) {
        rep.holds = Verdict::no;
    }
    return rep;
}

}  // namespace bihardy::meanzero
