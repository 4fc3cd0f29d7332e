#include "validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "bihardy/constants.hpp"
#include "bihardy/functional.hpp"
#include "bihardy/meanzero.hpp"
#include "bihardy/oracle.hpp"
#include "bihardy/report_types.hpp"
#include "bihardy/vanishing.hpp"
#include "cli.hpp"

namespace bihardy::validate {

namespace {

double val(const ExtendedReal& e) {
    if (e.cls == ValueClass::zero) return 0.0;
    return e.as_double();
}

bool near_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
bool near_rel(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }
// a <= b up to a relative slack; NaN fails.
bool le(double a, double b, double rel = 1e-6) { return a <= b + rel * std::fabs(b) + 1e-300; }

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Checks {
    bool ok = true;
    std::ostringstream msg;
    int count = 0;

    void expect(bool cond, const std::string& what) {
        ++count;
        if (!cond) {
            if (!ok) msg << "; ";
            else msg.str("");
            ok = false;
            msg << what;
        }
    }
    void note(const std::string& s) {
        if (ok) msg << (msg.tellp() > 0 ? "; " : "") << s;
    }
    CriterionResult done(int id) const {
        CriterionResult r;
        r.id = id;
        r.passed = ok;
        r.detail = msg.str();
        return r;
    }
};

WeightedInterval example(const std::string& key) { return cli::make_interval(cli::find_example(key).spec); }

// Lebesgue weights on (0,1): B_* in closed form.
double unit_interval_b_lower(double p, double q) {
    const double d = p - q + p * q;
    return 0.5 * std::pow(p / d, 1.0 / q) * std::pow((p - 1.0) * q / d, (p - 1.0) / p);
}

// H^o for u = x^-2, v = 1 on (1, inf) in closed form.
double inverse_square_h_o(double p, double q) {
    const double a = 1.0 - 1.0 / p - 1.0 / q;
    const double b = 1.0 - 1.0 / p;
    const double S = std::sqrt(a * a - 6.0 * a * b + b * b);
    return std::pow(2.0, 1.0 / q - 1.0) * std::pow(2.0 * b / (S + a - b) + 1.0, a) *
           std::pow(2.0 - (S + a + b) / (2.0 * b), b);
}

CriterionResult c1(const Options& o) {
    Checks ck;
    const WeightedInterval w = example("example-1.11");
    vanishing::Options vo;
    vo.k_perturbation = o.k_perturbation;
    const auto r = vanishing::vanishing_report(w, 2.0, 2.0, vo);
    ck.expect(near_abs(val(r.b_star), 0.25, 1e-6), "B* = " + fmt("%.10g", val(r.b_star)) + " at p=q=2");
    ck.expect(near_abs(val(r.b_lower), 0.25, 1e-6), "B_* = " + fmt("%.10g", val(r.b_lower)) + " at p=q=2");
    ck.expect(le(val(r.b_star), val(r.upper)), "B* exceeds the upper bound");
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double p = 1.2 + 0.75 * i;
        for (int j = 0; j < 5; ++j) {
            const double q = p + (5.0 - p) * j / 4.0;
            const double lo = val(vanishing::compute_b_lower(w, p, q).value);
            const double hi = val(vanishing::compute_b_star(w, p, q).value);
            const double want = unit_interval_b_lower(p, q);
            const double e1 = std::fabs(lo - want) / want;
            const double e2 = std::fabs(hi - std::pow(2.0, 1.0 / p - 1.0 / q) * want) / hi;
            worst = std::max({worst, e1, e2});
            ck.expect(e1 <= 1e-6, "B_* off closed form at p=" + fmt("%g", p) + " q=" + fmt("%g", q) + ": rel err " + fmt("%.2e", e1));
            ck.expect(e2 <= 1e-6, "B* off 2^{1/p-1/q} B_* at p=" + fmt("%g", p) + " q=" + fmt("%g", q) + ": rel err " + fmt("%.2e", e2));
        }
    }
    ck.note("25 (p,q) pairs, worst rel err " + fmt("%.2e", worst));
    return ck.done(1);
}

CriterionResult c2(const Options& o) {
    Checks ck;
    const WeightedInterval w = example("example-1.11");
    const auto orc = oracle::dirichlet_constant(w, 4000);
    const double A = orc.a_estimate;
    ck.expect(near_rel(A, 1.0 / M_PI, 1e-4), "A = " + fmt("%.10g", A));
    ck.expect(orc.observed_order >= 1.8, "observed order " + fmt("%.3f", orc.observed_order));
    vanishing::Options vo;
    vo.k_perturbation = o.k_perturbation;
    const auto r = vanishing::vanishing_report(w, 2.0, 2.0, vo);
    ck.expect(le(val(r.lower), A) && le(A, val(r.upper)),
              "sandwich [" + fmt("%.6g", val(r.lower)) + ", " + fmt("%.6g", val(r.upper)) + "] misses A");
    ck.note("A = " + fmt("%.10f", A) + ", order " + fmt("%.3f", orc.observed_order));
    return ck.done(2);
}

CriterionResult c3(const Options& o) {
    Checks ck;
    const WeightedInterval w = example("example-1.12");
    vanishing::Options vo;
    vo.k_perturbation = o.k_perturbation;
    const auto r = vanishing::vanishing_report(w, 2.0, 2.0, vo);
    ck.expect(near_abs(val(r.b_star), 1.0, 1e-4), "B* = " + fmt("%.8g", val(r.b_star)));
    ck.expect(near_abs(val(r.b_lower), 1.0, 1e-4), "B_* = " + fmt("%.8g", val(r.b_lower)));
    const auto orc = oracle::dirichlet_constant(w, 4000);
    ck.expect(near_abs(orc.a_estimate, 2.0, 1e-2), "A = " + fmt("%.6g", orc.a_estimate));
    ck.expect(near_abs(val(r.upper), orc.a_estimate, 1e-2),
              "upper " + fmt("%.6g", val(r.upper)) + " not tight against A = " + fmt("%.6g", orc.a_estimate));
    ck.note("A = " + fmt("%.6f", orc.a_estimate) + " on [" + fmt("%g", orc.truncation.left_cut) + ", " +
            fmt("%g", orc.truncation.right_cut) + "]");
    return ck.done(3);
}

CriterionResult c4(const Options& o) {
    Checks ck;
    const WeightedInterval w = example("example-2.7");
    meanzero::Options mo;
    mo.k_perturbation = o.k_perturbation;
    const auto r = meanzero::compute_mz_bounds(w, 2.0, 2.0, mo);
    ck.expect(near_abs(val(r.b_star), 1.0, 1e-4), "B* = " + fmt("%.8g", val(r.b_star)));
    ck.expect(near_abs(val(r.b_lower), 1.0, 1e-4), "B_* = " + fmt("%.8g", val(r.b_lower)));
    ck.expect(near_abs(val(r.h_partial), 1.0, 1e-4), "H^partial = " + fmt("%.8g", val(r.h_partial)));
    ck.expect(near_abs(val(r.h_o), std::sqrt(0.5), 1e-6), "H^o = " + fmt("%.10g", val(r.h_o)));
    const auto orc = oracle::neumann_gap(w, 4000);
    ck.expect(near_abs(orc.a_estimate, 2.0, 2e-2), "A = " + fmt("%.6g", orc.a_estimate));
    ck.expect(le(val(r.b_star), orc.a_estimate) && le(orc.a_estimate, val(r.upper)),
              "A = " + fmt("%.6g", orc.a_estimate) + " outside [B*, upper]");
    const auto r25 = meanzero::compute_mz_bounds(w, 2.0, 2.5, mo);
    ck.expect(r25.holds == Verdict::no, std::string("q=2.5 verdict ") + to_string(r25.holds));
    ck.expect(r25.h_partial.is_infinite(), std::string("q=2.5 H^partial class ") + to_string(r25.h_partial.cls));
    ck.note("A = " + fmt("%.6f", orc.a_estimate) + "; q=2.5 fails via infinite H^partial");
    return ck.done(4);
}

CriterionResult c5(const Options& o) {
    Checks ck;
    const WeightedInterval w = example("example-2.8");
    meanzero::Options mo;
    mo.k_perturbation = o.k_perturbation;
    const auto r = meanzero::compute_mz_bounds(w, 2.0, 2.0, mo);
    ck.expect(near_abs(val(r.b_star), 1.0, 1e-4), "B* = " + fmt("%.8g", val(r.b_star)));
    ck.expect(near_abs(val(r.b_lower), 1.0, 1e-4), "B_* = " + fmt("%.8g", val(r.b_lower)));
    ck.expect(near_abs(val(r.h_partial), 1.0, 1e-4), "H^partial = " + fmt("%.8g", val(r.h_partial)));
    const auto orc = oracle::neumann_gap(w, 4000);
    ck.expect(near_abs(orc.a_estimate, 2.0, 2e-2), "A = " + fmt("%.6g", orc.a_estimate));
    ck.expect(le(val(r.b_star), orc.a_estimate) && le(orc.a_estimate, val(r.upper)),
              "A = " + fmt("%.6g", orc.a_estimate) + " outside [B*, upper]");
    const double ho = val(meanzero::compute_h_o_mz(w, 1.25, 2.0).value);
    const double want = inverse_square_h_o(1.25, 2.0);
    ck.expect(near_abs(ho, want, 1e-6), "H^o(p=1.25,q=2) = " + fmt("%.10g", ho) + " vs closed form " + fmt("%.10g", want));
    ck.note("A = " + fmt("%.6f", orc.a_estimate) + "; H^o(1.25,2) = " + fmt("%.10f", ho));
    return ck.done(5);
}

CriterionResult c6(const Options& o) {
    Checks ck;
    cli::ProblemSpec spec = cli::find_example("example-1.12").spec;
    spec.p = 2.0;
    spec.k_perturbation = o.k_perturbation;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = cli::sweep(spec, 2.01, 4.8, 50);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double prev = INFINITY, rmax = 0.0;
    for (const auto& row : rows) {
        const std::string at = " at q=" + fmt("%.4f", row.q);
        if (row.failed) {
            ck.expect(false, "row failed" + at + ": " + row.error);
            continue;
        }
        const double ho = val(row.h_o), lo = val(row.b_lower), bs = val(row.b_star), up = val(row.upper);
        ck.expect(le(ho, lo) && le(lo, bs) && le(bs, up), "ordering broken" + at);
        const double ratio = up / lo;
        rmax = std::max(rmax, ratio);
        ck.expect(ratio <= 2.0 + 1e-9, "upper/B_* = " + fmt("%.12g", ratio) + at);
        ck.expect(ratio < prev, "ratio not decreasing" + at);
        prev = ratio;
    }
    ck.expect(secs < 60.0, "sweep took " + fmt("%.1f", secs) + " s");
    ck.note("50 rows, ratio " + fmt("%.4f", val(rows.front().upper) / val(rows.front().b_lower)) + " -> " +
            fmt("%.4f", val(rows.back().upper) / val(rows.back().b_lower)) + ", " + fmt("%.1f", secs) + " s");
    return ck.done(6);
}

CriterionResult c7(const Options& o) {
    Checks ck;
    cli::ProblemSpec spec = cli::find_example("example-2.8").spec;
    spec.p = 1.25;
    spec.k_perturbation = o.k_perturbation;
    const double p = spec.p;
    const auto rows = cli::sweep(spec, 2.0, 4.25, 50);
    double prev = 0.0, peak = 0.0, peak_q = 0.0;
    int drops = 0;
    for (const auto& row : rows) {
        const std::string at = " at q=" + fmt("%.4f", row.q);
        if (row.failed) {
            ck.expect(false, "row failed" + at + ": " + row.error);
            continue;
        }
        const double ho = val(row.h_o), lo = val(row.b_lower), bs = val(row.b_star), up = val(row.upper);
        ck.expect(le(ho, lo) && le(lo, bs) && le(bs, up), "ordering broken" + at);
        const double ratio = up / lo;
        ck.expect(ratio <= 2.0 + 1e-9, "upper/B_* = " + fmt("%.12g", ratio) + at);
        const double rb = bs / lo;
        ck.expect(le(std::pow(2.0, 1.0 / p - 1.0), rb) && le(rb, std::pow(2.0, 1.0 - 1.0 / row.q)),
                  "B*/B_* = " + fmt("%.6g", rb) + " outside its band" + at);
        if (ratio > peak) peak = ratio, peak_q = row.q;
        if (!(ratio > prev)) ++drops;
        prev = ratio;
    }
    const bool rest_ok = ck.ok;
    ck.expect(drops == 0, std::string(rest_ok ? "ordering, ratio <= 2 and B*/B_* band hold; " : "") +
                              "upper/B_* not increasing: peaks at " + fmt("%.4f", peak) + " near q=" + fmt("%.3f", peak_q) +
                              ", then falls to " + fmt("%.4f", prev) + " (" + std::to_string(drops) + " of 50 steps drop)");
    ck.note("ordering, ratio <= 2 and B*/B_* band hold at all 50 q");
    return ck.done(7);
}

// ---- randomized batches ----------------------------------------------------

struct RandomCase {
    cli::ProblemSpec spec;
    std::string label;
};

RandomCase random_hardy_case(std::mt19937_64& rng, bool meanzero) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    RandomCase c;
    auto& s = c.spec;
    s.kind = meanzero ? cli::Case::meanzero : cli::Case::vanishing;
    s.mu = "exp(a*x)";
    s.nu = "exp(b*x)";
    s.p = 1.1 + 2.9 * U(rng);
    s.q = U(rng) < 0.2 ? s.p : s.p + (5.0 - s.p) * U(rng);
    const bool half = U(rng) < 0.5;
    double a, b;
    s.left = Endpoint::finite(0.0);
    if (!half) {
        s.right = Endpoint::finite(0.5 + 2.5 * U(rng));
        a = -2.0 + 4.0 * U(rng);
        b = -2.0 + 4.0 * U(rng);
    } else {
        s.right = Endpoint::pos_inf();
        // Exponents chosen so the constants are finite: vanishing needs a
        // finite nuhat tail dominating mu growth, mean-zero a finite mu.
        do {
            if (meanzero) {
                a = -3.0 + 2.8 * U(rng);
                b = -2.0 + 4.0 * U(rng);
            } else {
                a = -2.0 + 3.0 * U(rng);
                b = 0.1 + 1.9 * U(rng);
            }
        } while (meanzero ? (b < 0 && a / s.q - b / s.p > -0.1) : (a / s.q > b / s.p - 0.1));
    }
    s.params = {{"a", a}, {"b", b}};
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s (0,%s) a=%.3f b=%.3f p=%.3f q=%.3f", meanzero ? "meanzero" : "vanishing",
                  s.right.to_string().c_str(), a, b, s.p, s.q);
    c.label = buf;
    return c;
}

CriterionResult c8(const Options& o) {
    Checks ck;
    std::mt19937_64 rng(o.seed);
    oracle::SearchOptions so;
    so.grid_n = 200;
    so.restarts = 8;
    so.max_iterations = 1500;
    int cases = 0, reached = 0;
    for (int i = 0; i < o.property_cases; ++i) {
        const bool mz = i % 2 == 1;
        const RandomCase rc = random_hardy_case(rng, mz);
        const WeightedInterval w = cli::make_interval(rc.spec);
        const double p = rc.spec.p, q = rc.spec.q;
        double lo, bs, ho, hd;
        std::string sandwich;
        bool s1, s2;
        if (!mz) {
            vanishing::Options vo;
            vo.k_perturbation = o.k_perturbation;
            const auto r = vanishing::vanishing_report(w, p, q, vo);
            lo = val(r.b_lower), bs = val(r.b_star), ho = val(r.h_o), hd = val(r.h_partial);
            s1 = le(std::max(ho, hd), lo) && le(lo, std::max(std::pow(2.0, 1.0 / p) * ho, hd));
            s2 = le(std::max(std::pow(2.0, 1.0 / p - 1.0 / q) * ho, hd), bs) &&
                 le(bs, std::max(std::pow(2.0, 1.0 / p) * ho, hd));
            ck.expect(le(bs, val(r.upper)), "B* above upper: " + rc.label);
        } else {
            meanzero::Options mo;
            mo.k_perturbation = o.k_perturbation;
            const auto r = meanzero::compute_mz_bounds(w, p, q, mo);
            lo = val(r.b_lower), bs = val(r.b_star), ho = val(r.h_o), hd = val(r.h_partial);
            const double c = std::pow(2.0, 1.0 - 1.0 / q);
            s1 = le(std::max(ho, hd), lo) && le(lo, std::max(c * ho, hd));
            s2 = le(std::max(std::pow(2.0, 1.0 / p - 1.0 / q) * ho, hd), bs) && le(bs, std::max(c * ho, hd));
            if (r.upper_valid) ck.expect(le(bs, val(r.upper)), "B* above upper: " + rc.label);
        }
        ++cases;
        ck.expect(std::isfinite(lo) && std::isfinite(bs), "non-finite constants: " + rc.label);
        ck.expect(le(lo, bs) && le(bs, std::pow(2.0, 1.0 / p - 1.0 / q) * lo), "B_* <= B* <= 2^{1/p-1/q} B_* fails: " + rc.label);
        ck.expect(s1, "B_* sandwich fails: " + rc.label + " H^o=" + fmt("%.6g", ho) + " H^partial=" + fmt("%.6g", hd) +
                          " B_*=" + fmt("%.6g", lo));
        ck.expect(s2, "B* sandwich fails: " + rc.label + " H^o=" + fmt("%.6g", ho) + " H^partial=" + fmt("%.6g", hd) +
                          " B*=" + fmt("%.6g", bs));
        const auto orc = oracle::rayleigh_search(w, p, q, mz ? oracle::Mode::meanzero : oracle::Mode::vanishing, so);
        ck.expect(orc.a_estimate >= lo - 1e-6, "search below B_*: " + rc.label);
        ck.expect(!orc.inconsistent, "discrete search stalled below B_*: " + rc.label + " best " +
                                         fmt("%.6g", orc.best_discrete) + " vs B_* " + fmt("%.6g", lo));
        if (orc.best_discrete >= lo) ++reached;
    }
    ck.note(std::to_string(cases) + " cases; discrete search alone reached B_* in " + std::to_string(reached));
    return ck.done(8);
}

CriterionResult c9(const Options& o) {
    Checks ck;
    std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    oracle::SearchOptions so;
    so.grid_n = 200;
    so.restarts = 8;
    so.max_iterations = 1500;
    double worst_res = 0.0;
    for (int i = 0; i < o.logsobolev_cases; ++i) {
        cli::ProblemSpec s;
        s.kind = cli::Case::logsobolev;
        s.mu = "exp(a*x)";
        s.nu = "exp(b*x)";
        s.left = Endpoint::finite(0.0);
        double a, b;
        if (i % 3 == 2) {
            // Half-line: finite mu, and a nuhat tail light enough for a finite constant.
            s.right = Endpoint::pos_inf();
            a = -3.0 + 2.5 * U(rng);
            b = 0.2 + 1.8 * U(rng);
        } else {
            s.right = Endpoint::finite(0.5 + 2.5 * U(rng));
            a = -2.0 + 4.0 * U(rng);
            b = -2.0 + 4.0 * U(rng);
        }
        s.params = {{"a", a}, {"b", b}};
        char label[120];
        std::snprintf(label, sizeof label, "(0,%s) a=%.3f b=%.3f", s.right.to_string().c_str(), a, b);
        const WeightedInterval w = cli::make_interval(s);
        const auto r = functional::logsobolev_bounds(w);
        worst_res = std::max(worst_res, r.max_zstar_residual);
        ck.expect(r.max_zstar_residual <= 1e-12, std::string("z* residual ") + fmt("%.2e", r.max_zstar_residual) + " " + label);
        const double full = val(r.b_lower_full), med = val(r.b_lower_median), bs = val(r.b_star);
        ck.expect(le(med, full, 1e-9), std::string("median form exceeds full form ") + label);
        const auto orc = oracle::entropy_search(w, so);
        ck.expect(orc.a_estimate >= full - 1e-6, std::string("entropy search ") + fmt("%.6g", orc.a_estimate) +
                                                     " below B_* " + fmt("%.6g", full) + " " + label);
        ck.expect(orc.a_estimate <= 4.0 * o.k_perturbation * bs + 1e-3,
                  std::string("entropy search ") + fmt("%.6g", orc.a_estimate) + " above 4 B* " + label);
    }
    ck.note(std::to_string(o.logsobolev_cases) + " cases, worst z* residual " + fmt("%.2e", worst_res));
    return ck.done(9);
}

CriterionResult c10(const Options&) {
    Checks ck;
    const double k22 = constants::k_general(2.0, 2.0);
    ck.expect(near_abs(k22, 2.0, 1e-12), "k(2,2) = " + fmt("%.17g", k22));
    // Diagonal on a 200-point grid: 100 points in (1,2], 100 in (2,12].
    std::vector<double> qs, ks;
    for (int i = 1; i <= 100; ++i) qs.push_back(1.0 + i / 100.0);
    for (int i = 1; i <= 100; ++i) qs.push_back(2.0 + i / 10.0);
    for (double q : qs) ks.push_back(constants::k_general(q, q));
    const auto imax = static_cast<std::size_t>(std::max_element(ks.begin(), ks.end()) - ks.begin());
    ck.expect(qs[imax] == 2.0, "diagonal maximum at q=" + fmt("%g", qs[imax]));
    bool unimodal = true;
    for (std::size_t i = 1; i < ks.size(); ++i) unimodal &= i <= imax ? ks[i] > ks[i - 1] : ks[i] < ks[i - 1];
    ck.expect(unimodal, "diagonal is not unimodal");
    // Gamma(4) / (Gamma(2) Gamma(3)) = 3! / (1! 2!) = 3.
    const double ref = std::pow(6.0 / (1.0 * 2.0), 0.25);
    const double kh = constants::k_halfline(2.0, 4.0);
    ck.expect(near_abs(kh, ref, 1e-10), "k_halfline(2,4) = " + fmt("%.17g", kh));
    int pairs = 0;
    for (double p = 1.1; p < 5.0; p += 0.3)
        for (double q = p + 0.05; q <= 8.0; q += 0.35) {
            ++pairs;
            ck.expect(le(constants::k_halfline(p, q), constants::k_general(p, q), 1e-12),
                      "k_halfline > k_general at p=" + fmt("%g", p) + " q=" + fmt("%g", q));
        }
    ck.note("k(2,2) = " + fmt("%.15g", k22) + "; " + std::to_string(pairs) + " (p,q) pairs compared");
    return ck.done(10);
}

}  // namespace

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "example-1.11", "golden constants on (0,1) and closed-form grid", c1},
        {2, "example-1.11", "Dirichlet oracle equals 1/pi with second-order convergence", c2},
        {3, "example-1.12", "golden constants and Dirichlet oracle A = 2", c3},
        {4, "example-2.7", "golden constants, Neumann oracle A = 2, failure for q > p", c4},
        {5, "example-2.8", "golden constants, Neumann oracle A = 2, H^o closed form", c5},
        {6, "example-1.12", "vanishing q-sweep: ordering, ratio <= 2 and decreasing", c6},
        {7, "example-2.8", "mean-zero q-sweep: ordering, bands, ratio <= 2 and increasing", c7},
        {8, "property", "randomized comparisons, sandwiches and search lower bound", c8},
        {9, "logsobolev", "randomized log-Sobolev properties", c9},
        {10, "constants", "k-factor identities", c10},
    };
    return all;
}

bool matches(const Criterion& c, const std::string& filter) {
    if (filter.empty()) return true;
    return filter == c.family || filter == "criterion-" + std::to_string(c.id) || filter == std::to_string(c.id);
}

CriterionResult run_one(const Criterion& c, const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = c.run(opt);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.id = c.id;
    r.family = c.family;
    r.title = c.title;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run(const Options& opt) {
    std::vector<CriterionResult> out;
    for (const auto& c : criteria())
        if (matches(c, opt.filter)) out.push_back(run_one(c, opt));
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "criterion %2d  %s  %-13s %-62s %7.2fs  ", r.id, r.passed ? "PASS" : "FAIL",
                  r.family.c_str(), r.title.c_str(), r.seconds);
    return head + r.detail;
}

}  // namespace bihardy::validate
