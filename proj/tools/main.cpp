#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bihardy/errors.hpp"
#include "cli.hpp"
#include "validate.hpp"

using namespace bihardy;

namespace {

struct SpecArgs {
    std::string example;
    std::string kind;
    std::vector<std::string> interval;
    std::string mu, nu;
    std::vector<std::string> params;
    double p = 0.0, q = 0.0, gamma = 0.0, theta = 0.0;
    double k_perturbation = 1.0;
};

void add_spec_options(CLI::App* cmd, SpecArgs& a) {
    cmd->add_option("--example", a.example, "start from a registry entry (example-1.11, ...)");
    cmd->add_option("--case", a.kind, "vanishing | meanzero | nash | sobolev | logsobolev");
    cmd->add_option("--interval", a.interval, "endpoints A B; literals, inf or -inf")->expected(2)->allow_extra_args(false);
    cmd->add_option("--mu", a.mu, "density of mu, in x");
    cmd->add_option("--nu", a.nu, "density of nu, in x");
    cmd->add_option("--param", a.params, "parameter binding name=value (repeatable)");
    cmd->add_option("--p", a.p);
    cmd->add_option("--q", a.q);
    cmd->add_option("--gamma", a.gamma, "dimension for nash / sobolev");
    cmd->add_option("--theta", a.theta, "split point for nash with gamma <= 2 (default: median)");
    cmd->add_option("--k-perturbation", a.k_perturbation, "test hook: scales the k factor")->default_val(1.0);
}

cli::ProblemSpec build_spec(const CLI::App* cmd, const SpecArgs& a) {
    cli::ProblemSpec s;
    if (!a.example.empty()) s = cli::find_example(a.example).spec;
    if (!a.kind.empty()) s.kind = cli::parse_case(a.kind);
    if (!a.interval.empty()) {
        s.left = Endpoint::parse(a.interval.at(0));
        s.right = Endpoint::parse(a.interval.at(1));
    }
    if (!a.mu.empty()) s.mu = a.mu;
    if (!a.nu.empty()) s.nu = a.nu;
    for (const auto& t : a.params) {
        auto [k, v] = cli::parse_param(t);
        s.params[k] = v;
    }
    if (cmd->count("--p")) s.p = a.p;
    if (cmd->count("--q")) s.q = a.q;
    if (cmd->count("--gamma")) s.gamma = a.gamma;
    if (cmd->count("--theta")) s.theta = a.theta;
    s.k_perturbation = a.k_perturbation;
    return s;
}

int fail(int code, const char* type, const std::string& message) {
    cli::Json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sided bounds for weighted Hardy, Nash, Sobolev and log-Sobolev constants"};
    app.require_subcommand(1);

    SpecArgs compute_args;
    auto* compute = app.add_subcommand("compute", "print one report as JSON");
    add_spec_options(compute, compute_args);

    SpecArgs sweep_args;
    double q_from = 0.0, q_to = 0.0;
    int steps = 50;
    std::string out_csv, out_svg, title;
    auto* sweep = app.add_subcommand("sweep", "q-sweep to CSV and SVG");
    add_spec_options(sweep, sweep_args);
    sweep->add_option("--q-from", q_from)->required();
    sweep->add_option("--q-to", q_to)->required();
    sweep->add_option("--steps", steps)->default_val(50);
    sweep->add_option("--out-csv", out_csv, "CSV path; '-' or omitted writes to stdout");
    sweep->add_option("--out-svg", out_svg);
    sweep->add_option("--title", title);

    SpecArgs oracle_args;
    std::string method = "auto";
    int grid_n = 0;
    auto* orc = app.add_subcommand("oracle", "independent discretized estimate of the constant, as JSON");
    add_spec_options(orc, oracle_args);
    orc->add_option("--method", method, "auto | dirichlet | neumann | search")->default_val("auto");
    orc->add_option("--n", grid_n, "grid cells (0: oracle default)")->default_val(0);

    validate::Options vopt;
    auto* val = app.add_subcommand("validate", "run the acceptance suite");
    val->add_option("--filter", vopt.filter, "family (example-2.7, property, ...) or criterion-N");
    val->add_option("--seed", vopt.seed)->default_val(vopt.seed);
    val->add_option("--k-perturbation", vopt.k_perturbation, "test hook: scales every k factor")->default_val(1.0);
    val->add_option("--property-cases", vopt.property_cases)->default_val(vopt.property_cases);
    val->add_option("--logsobolev-cases", vopt.logsobolev_cases)->default_val(vopt.logsobolev_cases);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    }

    try {
        if (*compute) {
            const auto spec = build_spec(compute, compute_args);
            std::cout << cli::compute(spec).dump(2) << "\n";
            return 0;
        }
        if (*orc) {
            const auto spec = build_spec(orc, oracle_args);
            std::cout << cli::run_oracle(spec, method, grid_n).dump(2) << "\n";
            return 0;
        }
        if (*sweep) {
            const auto spec = build_spec(sweep, sweep_args);
            const auto rows = cli::sweep(spec, q_from, q_to, steps);
            if (out_csv.empty() || out_csv == "-") {
                cli::write_csv(std::cout, rows);
            } else {
                std::ofstream f(out_csv, std::ios::binary);
                if (!f) return fail(2, "io", "cannot open " + out_csv);
                cli::write_csv(f, rows);
            }
            if (!out_svg.empty()) {
                std::ofstream f(out_svg, std::ios::binary);
                if (!f) return fail(2, "io", "cannot open " + out_svg);
                if (title.empty()) title = std::string(cli::to_string(spec.kind)) + " bounds, p = " + std::to_string(spec.p);
                f << cli::render_svg(rows, title);
            }
            return 0;
        }
        if (*val) {
            int failed = 0, ran = 0;
            for (const auto& c : validate::criteria()) {
                if (!validate::matches(c, vopt.filter)) continue;
                const auto r = validate::run_one(c, vopt);
                std::cout << validate::format_line(r) << std::endl;
                ++ran;
                failed += !r.passed;
            }
            if (ran == 0) return fail(2, "validation", "filter '" + vopt.filter + "' matches no criterion");
            std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
            return failed ? 1 : 0;
        }
    } catch (const ValidationError& e) {
        return fail(2, "validation", e.what());
    } catch (const DomainError& e) {
        return fail(2, "domain", e.what());
    } catch (const NumericalError& e) {
        return fail(3, "numerical", e.what());
    }
    return 0;
}
