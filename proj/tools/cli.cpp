#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <thread>

#include "bihardy/errors.hpp"
#include "bihardy/functional.hpp"
#include "bihardy/meanzero.hpp"
#include "bihardy/oracle.hpp"
#include "bihardy/vanishing.hpp"

namespace bihardy::cli {

Case parse_case(const std::string& name) {
    if (name == "vanishing") return Case::vanishing;
    if (name == "meanzero") return Case::meanzero;
    if (name == "nash") return Case::nash;
    if (name == "sobolev") return Case::sobolev;
    if (name == "logsobolev") return Case::logsobolev;
    throw ValidationError("unknown case '" + name + "' (expected vanishing, meanzero, nash, sobolev, logsobolev)");
}

const char* to_string(Case c) {
    switch (c) {
        case Case::vanishing: return "vanishing";
        case Case::meanzero: return "meanzero";
        case Case::nash: return "nash";
        case Case::sobolev: return "sobolev";
        case Case::logsobolev: return "logsobolev";
    }
    return "?";
}

std::pair<std::string, double> parse_param(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("parameter must look like name=value: " + text);
    const std::string name = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ValidationError("parameter value is not a number: " + text);
    }
    if (used != value.size() || !std::isfinite(v)) throw ValidationError("parameter value is not a finite number: " + text);
    return {name, v};
}

WeightedInterval make_interval(const ProblemSpec& spec) {
    return WeightedInterval(spec.left, spec.right, expr::parse(spec.mu), expr::parse(spec.nu), spec.params);
}

Json to_json(const ExtendedReal& e) {
    Json j;
    switch (e.cls) {
        case ValueClass::finite: j["value"] = e.value; break;
        case ValueClass::zero: j["value"] = 0; break;
        case ValueClass::infinite: j["value"] = "inf"; break;
        case ValueClass::unknown: j["value"] = nullptr; break;
    }
    j["class"] = bihardy::to_string(e.cls);
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

namespace {

Json point(const SupOutcome& s) {
    Json j;
    j["x"] = s.x;
    j["y"] = s.y;
    if (s.at_boundary) j["at_boundary"] = true;
    if (s.stale) j["stale"] = true;
    return j;
}

Json input_json(const ProblemSpec& spec) {
    Json j;
    j["case"] = to_string(spec.kind);
    j["interval"] = {spec.left.to_string(), spec.right.to_string()};
    j["mu"] = spec.mu;
    j["nu"] = spec.nu;
    Json params = Json::object();
    for (const auto& [k, v] : spec.params) params[k] = v;
    j["params"] = params;
    if (spec.kind == Case::nash || spec.kind == Case::sobolev) {
        j["gamma"] = spec.gamma;
    } else if (spec.kind != Case::logsobolev) {
        j["p"] = spec.p;
        j["q"] = spec.q;
    }
    return j;
}

Json vanishing_json(const vanishing::BoundReport& r) {
    Json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["b_star"] = to_json(r.b_star);
    j["b_lower"] = to_json(r.b_lower);
    j["h_o"] = to_json(r.h_o);
    j["h_partial"] = to_json(r.h_partial);
    j["k"] = r.k;
    j["k_alt"] = r.k_alt;
    j["k_halfline"] = r.k_halfline;
    j["lower"] = to_json(r.lower);
    j["upper"] = to_json(r.upper);
    j["upper_alt"] = to_json(r.upper_alt);
    j["holds"] = bihardy::to_string(r.holds);
    j["nuhat_finite"] = r.nuhat_finite;
    j["argmax_b_star"] = point(r.argmax_b_star);
    j["argmax_b_lower"] = point(r.argmax_b_lower);
    j["h_o_argmax"] = r.h_o_argmax;
    j["diagnostics"] = r.diagnostics;
    return j;
}

Json meanzero_json(const meanzero::MeanZeroReport& r) {
    Json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["pi_total"] = r.pi_total;
    j["b_star"] = to_json(r.b_star);
    j["b_lower"] = to_json(r.b_lower);
    j["h_o"] = to_json(r.h_o);
    j["h_partial"] = to_json(r.h_partial);
    j["k"] = r.k;
    j["lower"] = to_json(r.lower);
    j["upper"] = to_json(r.upper);
    j["upper_valid"] = r.upper_valid;
    if (!r.upper_note.empty()) j["upper_note"] = r.upper_note;
    j["holds"] = bihardy::to_string(r.holds);
    j["argmax_b_star"] = point(r.argmax_b_star);
    j["argmax_b_lower"] = point(r.argmax_b_lower);
    j["h_o_argmax"] = r.h_o_argmax;
    j["diagnostics"] = r.diagnostics;
    return j;
}

const char* verdict_word(Verdict v) {
    switch (v) {
        case Verdict::yes: return "holds";
        case Verdict::no: return "fails";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

Json nash_json(const functional::NashReport& r) {
    Json j;
    j["gamma"] = r.gamma;
    j["q"] = r.q;
    j["b_s_star"] = to_json(r.b_s_star);
    j["b_s_lower"] = to_json(r.b_s_lower);
    j["upper"] = to_json(r.upper);
    j["lower"] = to_json(r.lower);
    j["verdict"] = verdict_word(r.verdict);
    j["diagnostics"] = r.diagnostics;
    return j;
}

Json small_gamma_json(double gamma, const functional::SmallGammaResult& r) {
    Json j;
    j["gamma"] = gamma;
    j["theta"] = r.theta;
    j["verdict"] = verdict_word(r.verdict);
    j["diagnostics"] = r.notes;
    return j;
}

Json logsobolev_json(const functional::LogSobolevReport& r) {
    Json j;
    j["pi_total"] = r.pi_total;
    j["b_star"] = to_json(r.b_star);
    j["b_lower_full"] = to_json(r.b_lower_full);
    j["b_lower_median"] = to_json(r.b_lower_median);
    j["upper"] = to_json(r.upper);
    j["lower"] = to_json(r.lower);
    j["argmax_b_star"] = point(r.argmax_b_star);
    j["argmax_b_lower_full"] = point(r.argmax_b_lower_full);
    j["argmax_b_lower_median"] = point(r.argmax_b_lower_median);
    j["median"] = r.median;
    j["max_zstar_residual"] = r.max_zstar_residual;
    j["diagnostics"] = r.diagnostics;
    return j;
}

}  // namespace

Json compute(const ProblemSpec& spec) {
    const WeightedInterval w = make_interval(spec);
    Json out;
    out["input"] = input_json(spec);
    switch (spec.kind) {
        case Case::vanishing: {
            vanishing::Options opt;
            opt.k_perturbation = spec.k_perturbation;
            out["report"] = vanishing_json(vanishing::vanishing_report(w, spec.p, spec.q, opt));
            break;
        }
        case Case::meanzero: {
            meanzero::Options opt;
            opt.k_perturbation = spec.k_perturbation;
            out["report"] = meanzero_json(meanzero::compute_mz_bounds(w, spec.p, spec.q, opt));
            break;
        }
        case Case::nash:
        case Case::sobolev: {
            if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma)) throw ValidationError("gamma must be a positive number");
            if (spec.gamma > 2.0) out["report"] = nash_json(functional::sobolev_bounds(w, spec.gamma, {}, spec.theta));
            else out["report"] = small_gamma_json(spec.gamma, functional::nash_small_gamma(w, spec.gamma, spec.theta));
            break;
        }
        case Case::logsobolev:
            out["report"] = logsobolev_json(functional::logsobolev_bounds(w));
            break;
    }
    return out;
}

Json run_oracle(const ProblemSpec& spec, const std::string& method, int n) {
    const WeightedInterval w = make_interval(spec);
    if (n < 0) throw ValidationError("n must be nonnegative");
    const bool p2q2 = spec.p == 2.0 && spec.q == 2.0;
    std::string m = method;
    if (m == "auto") {
        if (spec.kind == Case::vanishing && p2q2) m = "dirichlet";
        else if (spec.kind == Case::meanzero && p2q2) m = "neumann";
        else m = "search";
    }
    oracle::OracleResult r;
    if (m == "dirichlet" || m == "neumann") {
        if (!p2q2) throw ValidationError("eigenvalue oracles need p = q = 2");
        if (spec.kind != (m == "dirichlet" ? Case::vanishing : Case::meanzero))
            throw ValidationError(m + " oracle does not match case " + to_string(spec.kind));
        r = m == "dirichlet" ? oracle::dirichlet_constant(w, n ? n : 4000) : oracle::neumann_gap(w, n ? n : 4000);
    } else if (m == "search") {
        oracle::SearchOptions so;
        if (n) so.grid_n = n;
        switch (spec.kind) {
            case Case::vanishing: r = oracle::rayleigh_search(w, spec.p, spec.q, oracle::Mode::vanishing, so); break;
            case Case::meanzero: r = oracle::rayleigh_search(w, spec.p, spec.q, oracle::Mode::meanzero, so); break;
            case Case::logsobolev: r = oracle::entropy_search(w, so); break;
            default: throw ValidationError("no oracle for case " + std::string(to_string(spec.kind)));
        }
    } else {
        throw ValidationError("unknown oracle method '" + method + "'");
    }
    Json j;
    j["a_estimate"] = r.a_estimate;
    j["kind"] = oracle::to_string(r.kind);
    j["certified_side"] = oracle::to_string(r.certified_side);
    j["n"] = r.n;
    j["truncation"] = {{"left_cut", r.truncation.left_cut},
                       {"right_cut", r.truncation.right_cut},
                       {"discarded_left", r.truncation.discarded_left},
                       {"discarded_right", r.truncation.discarded_right}};
    if (r.kind == oracle::Kind::dirichlet_p2q2 || r.kind == oracle::Kind::neumann_p2q2) {
        j["a_n"] = r.a_n;
        j["a_2n"] = r.a_2n;
        j["a_4n"] = r.a_4n;
        j["lambda"] = r.lambda;
        if (r.kind == oracle::Kind::neumann_p2q2) j["lambda_trivial"] = r.lambda_trivial;
        j["observed_order"] = r.observed_order;
    } else {
        j["seed_certificate"] = r.seed_certificate;
        j["best_discrete"] = r.best_discrete;
        j["restarts"] = r.restarts;
        j["inconsistent"] = r.inconsistent;
    }
    j["diagnostics"] = r.diagnostics;
    Json out;
    out["input"] = input_json(spec);
    out["oracle"] = std::move(j);
    return out;
}

namespace {

SweepRow sweep_row(const ProblemSpec& spec, double q) {
    SweepRow row;
    row.q = q;
    try {
        const WeightedInterval w = make_interval(spec);
        if (spec.kind == Case::vanishing) {
            vanishing::Options opt;
            opt.k_perturbation = spec.k_perturbation;
            const auto r = vanishing::vanishing_report(w, spec.p, q, opt);
            row.h_o = r.h_o;
            row.b_lower = r.b_lower;
            row.b_star = r.b_star;
            row.upper = r.upper;
            row.upper_alt = r.upper_alt;
        } else {
            meanzero::Options opt;
            opt.k_perturbation = spec.k_perturbation;
            const auto r = meanzero::compute_mz_bounds(w, spec.p, q, opt);
            row.h_o = r.h_o;
            row.b_lower = r.b_lower;
            row.b_star = r.b_star;
            row.upper = r.upper;
            row.upper_alt = ExtendedReal::unknown("not defined for the mean-zero case");
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> sweep(const ProblemSpec& spec, double q_from, double q_to, int steps) {
    if (spec.kind != Case::vanishing && spec.kind != Case::meanzero)
        throw ValidationError("sweep supports the vanishing and meanzero cases");
    if (steps < 1) throw ValidationError("steps must be at least 1");
    if (!(q_from <= q_to)) throw ValidationError("q-from must not exceed q-to");
    std::vector<double> qs(steps);
    for (int i = 0; i < steps; ++i) qs[i] = steps == 1 ? q_from : q_from + (q_to - q_from) * i / (steps - 1);

    // Each row builds its own interval: rows share no caches, so results do
    // not depend on scheduling.
    std::vector<SweepRow> rows(steps);
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < qs.size(); start += width) {
        std::vector<std::future<SweepRow>> jobs;
        for (std::size_t i = start; i < std::min(qs.size(), start + width); ++i)
            jobs.push_back(std::async(std::launch::async, sweep_row, std::cref(spec), qs[i]));
        for (std::size_t i = 0; i < jobs.size(); ++i) rows[start + i] = jobs[i].get();
    }
    return rows;
}

std::string csv_cell(const ExtendedReal& e) {
    switch (e.cls) {
        case ValueClass::finite: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.value);
            return buf;
        }
        case ValueClass::zero: return "0";
        case ValueClass::infinite: return "inf";
        case ValueClass::unknown: return "";
    }
    return "";
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "q,h_o,b_lower,b_star,upper,upper_alt\r\n";
    for (const auto& r : rows) {
        char q[40];
        std::snprintf(q, sizeof q, "%.17g", r.q);
        os << q;
        for (const ExtendedReal* e : {&r.h_o, &r.b_lower, &r.b_star, &r.upper, &r.upper_alt})
            os << ',' << (r.failed ? std::string() : csv_cell(*e));
        os << "\r\n";
    }
}

std::string render_svg(const std::vector<SweepRow>& rows, const std::string& title) {
    constexpr double W = 960, H = 640, L = 80, R = 200, T = 50, B = 60;
    struct Series {
        const char* name;
        const char* color;
        ExtendedReal SweepRow::*field;
    };
    // Bottom-to-top order of the curves.
    const Series series[] = {{"h_o", "#1b9e77", &SweepRow::h_o},
                             {"b_lower", "#d95f02", &SweepRow::b_lower},
                             {"b_star", "#7570b3", &SweepRow::b_star},
                             {"upper", "#e7298a", &SweepRow::upper},
                             {"upper_alt", "#66a61e", &SweepRow::upper_alt}};
    double qmin = INFINITY, qmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& r : rows) {
        qmin = std::min(qmin, r.q);
        qmax = std::max(qmax, r.q);
        if (r.failed) continue;
        for (const auto& s : series) {
            const ExtendedReal& e = r.*s.field;
            if (!e.is_finite()) continue;
            ymin = std::min(ymin, e.value);
            ymax = std::max(ymax, e.value);
        }
    }
    if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    if (!(qmax > qmin)) qmax = qmin + 1.0;
    auto px = [&](double q) { return L + (q - qmin) / (qmax - qmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"640\" viewBox=\"0 0 960 640\">\n";
    os << "<rect width=\"960\" height=\"640\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
       << title << "</text>\n";
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>\n";
    os << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double q = qmin + (qmax - qmin) * i / 5;
        const double y = ymin + (ymax - ymin) * i / 5;
        os << "<text x=\"" << px(q) << "\" y=\"" << H - B + 20 << "\" text-anchor=\"middle\">" << q << "</text>\n";
        os << "<text x=\"" << L - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << y << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">q</text>\n</g>\n";
    int legend = 0;
    for (const auto& s : series) {
        std::ostringstream path;
        path.precision(8);
        bool pen = false, any = false;
        for (const auto& r : rows) {
            const ExtendedReal& e = r.*s.field;
            if (r.failed || !e.is_finite()) {
                pen = false;
                continue;
            }
            path << (pen ? " L " : " M ") << px(r.q) << ' ' << py(e.value);
            pen = any = true;
        }
        if (!any) continue;
        os << "<path fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" d=\"" << path.str() << "\"/>\n";
        // Legend lists bottom curve last so it reads top-down like the plot.
        const double ly = T + 20 + 22 * (4 - legend++);
        os << "<line x1=\"" << W - R + 20 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 50 << "\" y2=\"" << ly
           << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - R + 58 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"13\">"
           << s.name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

const std::vector<Example>& example_registry() {
    static const std::vector<Example> reg = [] {
        std::vector<Example> v;
        ProblemSpec s;
        s.kind = Case::vanishing;
        s.left = Endpoint::finite(0.0);
        s.right = Endpoint::finite(1.0);
        s.mu = "1";
        s.nu = "1";
        v.push_back({"example-1.11", "Lebesgue weights on (0,1), vanishing at both ends", s});
        s.left = Endpoint::finite(1.0);
        s.right = Endpoint::pos_inf();
        s.nu = "x^2";
        v.push_back({"example-1.12", "u = 1, v = x^2 on (1,inf), vanishing case", s});
        s.kind = Case::meanzero;
        s.left = Endpoint::finite(0.0);
        s.mu = "exp(-b*x)";
        s.nu = "exp(-b*x)";
        s.params = {{"b", 1.0}};
        v.push_back({"example-2.7", "u = v = exp(-b x) on (0,inf), mean-zero case", s});
        s.left = Endpoint::finite(1.0);
        s.mu = "x^(-2)";
        s.nu = "1";
        s.params.clear();
        v.push_back({"example-2.8", "u = x^-2, v = 1 on (1,inf), mean-zero case", s});
        return v;
    }();
    return reg;
}

const Example& find_example(const std::string& key) {
    for (const auto& e : example_registry())
        if (e.key == key) return e;
    throw ValidationError("unknown example '" + key + "'");
}

}  // namespace bihardy::cli
