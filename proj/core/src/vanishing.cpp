#include "bihardy/vanishing.hpp"

#include <cmath>

#include "bihardy/constants.hpp"
#include "bihardy/errors.hpp"
#include "bounds_internal.hpp"

namespace bihardy::vanishing {

using detail::m;

double objective_bstar(const WeightedInterval& w, double p, double q, double x, double y) {
    if (!(x < y)) return 0.0;
    const double mu = m(w.mu_mass(x, y));
    const double L = m(w.nuhat_mass(p, w.left(), x));
    const double R = m(w.nuhat_mass(p, y, w.right()));
    const double r = q * (p - 1.0) / p;
    return std::pow(mu, 1.0 / q) * std::pow(std::pow(L, -r) + std::pow(R, -r), -1.0 / q);
}

double objective_blower(const WeightedInterval& w, double p, double q, double x, double y) {
    if (!(x < y)) return 0.0;
    const double mu = m(w.mu_mass(x, y));
    const double L = m(w.nuhat_mass(p, w.left(), x));
    const double R = m(w.nuhat_mass(p, y, w.right()));
    return std::pow(mu, 1.0 / q) * std::pow(std::pow(L, 1.0 - p) + std::pow(R, 1.0 - p), -1.0 / p);
}

namespace {

void check_exponents(double p, double q) {
    if (!(p > 1.0) || !std::isfinite(p) || !(q > 1.0) || !std::isfinite(q))
        throw ValidationError("exponents must satisfy 1 < p, q < inf");
}

std::vector<double> scan(const WeightedInterval& w, double p, const Options& opt) {
    return search::scan_points(w, detail::scan_balance(w, Balance::nuhat(p)), opt.grid);
}

}  // namespace

search::BoundaryResult compute_h_partial(const WeightedInterval& w, double p, double q, const Options& opt) {
    check_exponents(p, q);
    const Balance mu = Balance::mu();
    const bool left = !w.side_finite(mu, Side::left);
    const bool right = !w.side_finite(mu, Side::right);
    return search::boundary_sup([&](double x, double y) { return objective_blower(w, p, q, x, y); }, w,
                                left, right, scan(w, p, opt));
}

SupOutcome compute_b_star(const WeightedInterval& w, double p, double q, const Options& opt) {
    return detail::two_point_sup([&](double x, double y) { return objective_bstar(w, p, q, x, y); }, w,
                                 scan(w, p, opt), compute_h_partial(w, p, q, opt), opt.pair);
}

SupOutcome compute_b_lower(const WeightedInterval& w, double p, double q, const Options& opt) {
    return detail::two_point_sup([&](double x, double y) { return objective_blower(w, p, q, x, y); }, w,
                                 scan(w, p, opt), compute_h_partial(w, p, q, opt), opt.pair);
}

CurveOutcome compute_h_o(const WeightedInterval& w, double p, double q, const Options& opt) {
    check_exponents(p, q);
    CurveOutcome out;
    const Balance nb = Balance::nuhat(p);
    if (!w.side_finite(nb, Side::left) || !w.side_finite(nb, Side::right)) {
        out.disabled = true;
        out.value = ExtendedReal::unknown("nuhat has infinite total mass; H^o undefined");
        return out;
    }
    const double med = median(w, nb);
    auto g = [&](double x) {
        if (!(x > w.left()) || x > med) return std::nan("");
        const double y = matching_point(w, nb, x);
        const double mu = m(w.mu_mass(x, y));
        const double L = m(w.nuhat_mass(p, w.left(), x));
        return std::pow(mu, 1.0 / q) * std::pow(L, (p - 1.0) / p);
    };
    std::vector<double> pts;
    for (double x : search::scan_points(w, nb, opt.grid))
        if (x < med) pts.push_back(x);
    pts.push_back(med);
    search::LineResult lr = search::maximize_line(g, pts, w.chart());
    double best = std::isnan(lr.value) ? 0.0 : lr.value;
    out.x = lr.x;
    // The supremum is over the half-open range; look at the left-end limit too.
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
    out.value = ExtendedReal::of(std::pow(2.0, -1.0 / p) * best);
    return out;
}

BoundReport vanishing_report(const WeightedInterval& w, double p, double q, const Options& opt) {
    check_exponents(p, q);
    if (q < p) throw ValidationError("vanishing bounds require p <= q");
    BoundReport rep;
    rep.p = p;
    rep.q = q;
    rep.k = constants::k_general(p, q) * opt.k_perturbation;
    rep.k_alt = constants::k_general(p, p) * opt.k_perturbation;
    rep.k_halfline = q > p ? constants::k_halfline(p, q) : 0.0;

    const Balance nb = Balance::nuhat(p);
    rep.nuhat_finite = w.side_finite(nb, Side::left) && w.side_finite(nb, Side::right);
    if (!rep.nuhat_finite) rep.diagnostics.push_back("nuhat has infinite mass near an endpoint; H^o path disabled");

    const search::BoundaryResult bnd = compute_h_partial(w, p, q, opt);
    rep.h_partial = bnd.value;
    for (const auto& n : bnd.notes) rep.diagnostics.push_back("H^partial: " + n);

    const auto pts = scan(w, p, opt);
    rep.argmax_b_star = detail::two_point_sup(
        [&](double x, double y) { return objective_bstar(w, p, q, x, y); }, w, pts, bnd, opt.pair);
    rep.argmax_b_lower = detail::two_point_sup(
        [&](double x, double y) { return objective_blower(w, p, q, x, y); }, w, pts, bnd, opt.pair);
    rep.b_star = rep.argmax_b_star.value;
    rep.b_lower = rep.argmax_b_lower.value;
    if (rep.argmax_b_star.stale) rep.diagnostics.push_back("B* optimizer hit its evaluation budget");
    if (rep.argmax_b_lower.stale) rep.diagnostics.push_back("B_* optimizer hit its evaluation budget");

    const CurveOutcome ho = compute_h_o(w, p, q, opt);
    rep.h_o = ho.value;
    rep.h_o_argmax = ho.x;

    rep.lower = rep.b_lower;
    rep.upper = scale(rep.b_star, rep.k);
    rep.upper_alt = scale(rep.b_lower, rep.k_alt);

    if (rep.nuhat_finite) {
        const ExtendedReal crit = max(rep.h_o, rep.h_partial);
        rep.holds = crit.is_infinite() ? Verdict::no : crit.is_finite() ? Verdict::yes : Verdict::unknown;
        // A nonincreasing boundary probe still certifies H^partial < inf.
        if (rep.holds == Verdict::unknown && rep.h_o.is_finite() && bnd.bounded) {
            rep.holds = Verdict::yes;
            rep.diagnostics.push_back("H^partial unclassified but bounded; criterion finite");
        } else if (rep.holds == Verdict::unknown && rep.b_lower.is_infinite()) {
            rep.holds = Verdict::no;
        }
    } else {
        // Without finite nuhat mass only the boundary term and B_* decide.
        if (rep.h_partial.is_infinite() || rep.b_lower.is_infinite())
            rep.holds = Verdict::no;
        else if (rep.h_partial.is_finite() && rep.b_lower.is_finite())
            rep.holds = Verdict::yes;
        else
            rep.holds = Verdict::unknown;
    }
    return rep;
}

}  // namespace bihardy::vanishing
