#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "validate.hpp"

using namespace bihardy;
using cli::Json;

namespace {
cli::ProblemSpec spec_of(const char* key) { return cli::find_example(key).spec; }

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
}  // namespace

TEST_CASE("registry keys") {
    for (const char* k : {"example-1.11", "example-1.12", "example-2.7", "example-2.8"})
        CHECK(cli::find_example(k).key == k);
    CHECK_THROWS_AS(cli::find_example("example-9.9"), ValidationError);
}

TEST_CASE("parameter parsing") {
    CHECK(cli::parse_param("b=1.5") == std::pair<std::string, double>{"b", 1.5});
    CHECK_THROWS_AS(cli::parse_param("b"), ValidationError);
    CHECK_THROWS_AS(cli::parse_param("=1"), ValidationError);
    CHECK_THROWS_AS(cli::parse_param("b=1.5x"), ValidationError);
    CHECK_THROWS_AS(cli::parse_case("hardy"), ValidationError);
}

TEST_CASE("compute report shape and encodings") {
    const Json j = cli::compute(spec_of("example-1.11"));
    const auto& r = j.at("report");
    CHECK(r.at("b_star").at("value").get<double>() == doctest::Approx(0.25));
    CHECK(r.at("b_star").at("class") == "finite");
    CHECK(r.at("h_partial").at("class") == "zero");
    CHECK(r.at("upper").at("value").get<double>() == doctest::Approx(0.5));
    CHECK(r.at("holds") == "yes");

    auto s = spec_of("example-2.7");
    s.q = 2.5;
    const Json bad = cli::compute(s);
    CHECK(bad.at("report").at("holds") == "no");
    CHECK(bad.at("report").at("h_partial").at("value") == "inf");
    CHECK(bad.at("report").at("h_partial").at("class") == "infinite");
}

TEST_CASE("JSON output is byte-stable") {
    for (const char* k : {"example-1.11", "example-2.8"}) {
        const auto a = cli::compute(spec_of(k)).dump();
        const auto b = cli::compute(spec_of(k)).dump();
        CHECK(a == b);
    }
}

TEST_CASE("CSV agrees with JSON to 15 significant digits") {
    auto s = spec_of("example-1.12");
    const auto rows = cli::sweep(s, 2.5, 3.5, 3);
    std::ostringstream os;
    cli::write_csv(os, rows);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "q,h_o,b_lower,b_star,upper,upper_alt\r");
    const char* fields[] = {"h_o", "b_lower", "b_star", "upper", "upper_alt"};
    for (int i = 0; i < 3; ++i) {
        std::getline(in, line);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto cells = split(line);
        REQUIRE(cells.size() == 6);
        s.q = std::strtod(cells[0].c_str(), nullptr);
        const auto report = cli::compute(s).at("report");
        for (int c = 0; c < 5; ++c) {
            const double from_csv = std::strtod(cells[c + 1].c_str(), nullptr);
            const double from_json = report.at(fields[c]).at("value").get<double>();
            CHECK(std::fabs(from_csv - from_json) <= 1e-15 * std::fabs(from_json));
        }
    }
}

TEST_CASE("steps = 1 degenerates to a single compute row") {
    auto s = spec_of("example-2.8");
    s.p = 1.25;
    const auto rows = cli::sweep(s, 2.0, 4.25, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].q == 2.0);
    s.q = 2.0;
    const auto r = cli::compute(s).at("report");
    CHECK(rows[0].b_star.value == r.at("b_star").at("value").get<double>());
    CHECK(rows[0].upper_alt.is_unknown());
    CHECK(cli::csv_cell(rows[0].upper_alt).empty());
}

TEST_CASE("diverging rows stay in the sweep") {
    auto s = spec_of("example-2.7");
    const auto rows = cli::sweep(s, 2.0, 3.0, 3);
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[0].failed);
    // q > p: the constants diverge, the row is still emitted.
    CHECK(rows[2].b_star.is_infinite());
    CHECK(cli::csv_cell(ExtendedReal::infinite()) == "inf");
}

TEST_CASE("SVG chart") {
    const auto rows = cli::sweep(spec_of("example-1.12"), 2.01, 4.8, 5);
    const auto svg = cli::render_svg(rows, "test");
    CHECK(svg.find("width=\"960\"") != std::string::npos);
    CHECK(svg.find("height=\"640\"") != std::string::npos);
    std::size_t paths = 0;
    for (auto pos = svg.find("<path"); pos != std::string::npos; pos = svg.find("<path", pos + 1)) ++paths;
    CHECK(paths == 5);
}

TEST_CASE("validate filtering") {
    const auto& all = validate::criteria();
    REQUIRE(all.size() == 10);
    int n = 0;
    for (const auto& c : all) n += validate::matches(c, "example-2.7");
    CHECK(n == 1);
    CHECK(validate::matches(all[6], "criterion-7"));
    CHECK_FALSE(validate::matches(all[6], "criterion-6"));
}

TEST_CASE("perturbed k factor is caught by the sandwich checks") {
    validate::Options o;
    o.k_perturbation = 0.5;
    const auto& all = validate::criteria();
    CHECK_FALSE(validate::run_one(all[1], o).passed);  // Dirichlet oracle above the shrunken upper bound
    CHECK_FALSE(validate::run_one(all[2], o).passed);
    o.k_perturbation = 1.0;
    CHECK(validate::run_one(all[1], o).passed);
}
