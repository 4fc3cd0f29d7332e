#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "bihardy/expr.hpp"

using namespace bihardy::expr;

TEST_CASE("arithmetic and precedence") {
    CHECK(parse("1+2*3").evaluate(0) == 7.0);
    CHECK(parse("(1+2)*3").evaluate(0) == 9.0);
    CHECK(parse("2^3^2").evaluate(0) == doctest::Approx(512.0));
    CHECK(parse("-x^2").evaluate(3) == -9.0);
    CHECK(parse("x/2/2").evaluate(8) == 2.0);
    CHECK(parse("1e-3*x").evaluate(2) == doctest::Approx(2e-3));
}

TEST_CASE("functions") {
    CHECK(parse("exp(x)").evaluate(1) == doctest::Approx(std::exp(1.0)));
    CHECK(parse("log(x)").evaluate(std::exp(2.0)) == doctest::Approx(2.0));
    CHECK(parse("sqrt(x)").evaluate(9) == 3.0);
    CHECK(parse("abs(x)").evaluate(-4) == 4.0);
    CHECK(parse("pow(x, 3)").evaluate(2) == doctest::Approx(8.0));
}

TEST_CASE("parameters bind at evaluation and compile time") {
    auto e = parse("exp(-b*x)");
    CHECK(e.parameters() == std::set<std::string>{"b"});
    CHECK(e.evaluate(2, {{"b", 0.5}}) == doctest::Approx(std::exp(-1.0)));
    CHECK_THROWS_AS(e.evaluate(1), UnboundParameter);
    auto c = e.compile({{"b", 2.0}});
    CHECK(c(1.0) == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("compiled program agrees with the tree") {
    auto e = parse("x^(-2) + sqrt(abs(x - 3)) * exp(-x/4) / (1 + log(1 + x))");
    auto c = e.compile();
    for (double x = 0.1; x < 20; x += 0.7) CHECK(c(x) == doctest::Approx(e.evaluate(x)).epsilon(1e-14));
}

TEST_CASE("parse errors carry offsets and expectations") {
    try {
        parse("1 + * x");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse("exp(x"), ParseError);
    CHECK_THROWS_AS(parse("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x y"), ParseError);
}

TEST_CASE("printing round-trips structurally") {
    for (const char* s : {"x^(-2)", "exp(-b*x)", "1 - x/(2+x)", "-(x-1)^2", "2^3^2"}) {
        auto e = parse(s);
        CHECK(structurally_equal(e, parse(e.to_string())));
    }
}
