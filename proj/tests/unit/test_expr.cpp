#include "doctest.h"

#include "isomean/error.hpp"
#include "isomean/expr.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace isomean;

TEST_CASE("parse and evaluate") {
    CHECK(parse("x^2+1")(2.0) == 5.0);
    CHECK(parse("ln(x)")(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(parse("sin(x)")(std::numbers::pi / 2) == 1.0);
    CHECK(std::abs(parse("x^0.5")(2.0) - std::sqrt(2.0)) <= 1e-12);
    CHECK(parse("sqrt(y)")(9.0) == 3.0);
    CHECK(parse("2*pi")(0.0) == doctest::Approx(2 * std::numbers::pi));
    CHECK(parse("e^x")(1.0) == doctest::Approx(std::numbers::e));
    CHECK(parse("1.5e2 + 2E-1")(0.0) == doctest::Approx(150.2));
}

TEST_CASE("precedence") {
    CHECK(parse("-x^2")(3.0) == -9.0);
    CHECK(parse("2^3^2")(0.0) == 512.0);
    CHECK(parse("2^-x")(1.0) == 0.5);
    CHECK(parse("1-2-3")(0.0) == -4.0);
    CHECK(parse("8/4/2")(0.0) == 1.0);
    CHECK(parse("2*x+3*x^2")(2.0) == 16.0);
    CHECK(parse("-(x+1)*2")(1.0) == -4.0);
}

TEST_CASE("printer round-trips") {
    CHECK(parse("2*x").str() == "2*x");
    CHECK(parse("x^2+1").str() == "x^2+1");
    const char* corpus[] = {"-x^2", "(-x)^2", "x-(x-1)", "2^3^x", "x^(2^x)", "(x^2)^3", "x/(2*x)", "sin(x)*cos(x)",
                            "exp(-x)", "1/(1+x)", "x*(-3)", "abs(x-1)", "x-(-3)", "pi*x", "ln(x)/ln(2)", "2^(-x)",
                            "cosh(x)-sinh(x)", "x*x*x", "x*(x*x)", "0.1*x+1e-05"};
    for (const char* text : corpus) {
        CAPTURE(text);
        const Expr e = parse(text);
        const Expr back = parse(e.str());
        CHECK(back.structurally_equal(e));
        CHECK(back.str() == e.str());
    }
}

TEST_CASE("parse errors carry offsets") {
    try {
        parse("x + * 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("(x"), ParseError);
    CHECK_THROWS_AS(parse("x y"), ParseError);
    CHECK_THROWS_AS(parse("x+y"), ParseError);
    CHECK_THROWS_AS(parse("sin x"), ParseError);
}

TEST_CASE("domain errors instead of NaN") {
    CHECK_THROWS_AS(parse("1/x")(0.0), DomainError);
    CHECK_THROWS_AS(parse("ln(x)")(-1.0), DomainError);
    CHECK_THROWS_AS(parse("ln(x)")(0.0), DomainError);
    CHECK_THROWS_AS(parse("x^-1")(0.0), DomainError);
    CHECK_THROWS_AS(parse("x^0.5")(-1.0), DomainError);
    CHECK_THROWS_AS(parse("exp(x)")(1000.0), DomainError);
    CHECK(parse("x^3")(-2.0) == -8.0);
    try {
        parse("1/x")(0.0);
    } catch (const DomainError& e) {
        CHECK(e.kind() == DomainError::Kind::Pole);
    }
}

TEST_CASE("symbolic derivatives") {
    CHECK(differentiate(parse("x^2.5")).str() == "2.5*x^1.5");
    CHECK(differentiate(parse("sinh(x)")).str() == "cosh(x)");
    CHECK(differentiate(parse("ln(x)")).str() == "1/x");
    CHECK(differentiate(parse("3")).is_constant(0.0));
    const Expr ratio = differentiate(parse("sinh(x)")) / differentiate(parse("cosh(x)"));
    CHECK(ratio(0.7) == doctest::Approx(std::cosh(0.7) / std::sinh(0.7)));
}

namespace {

struct CorpusEntry {
    const char* text;
    double lo;
    double hi;
};

const CorpusEntry kCorpus[] = {
    {"x^2+3*x-1", -3, 3},        {"x^3", -2, 2},          {"x^0.5", 0.1, 9},        {"x^-1.5", 0.2, 5},
    {"ln(x)", 0.05, 20},         {"exp(x)", -5, 5},       {"exp(-x^2)", -2, 2},     {"sin(x)", -3, 3},
    {"cos(x)", -3, 3},           {"tan(x)", -1.4, 1.4},   {"sinh(x)", -4, 4},       {"cosh(x)", -4, 4},
    {"abs(x-0.5)", 0.6, 3},      {"x^x", 0.2, 3},         {"2^x", -3, 3},           {"ln(1+x^2)", -3, 3},
    {"sin(exp(x))", -3, 1},      {"x*ln(x)-x", 0.1, 5},   {"1/(1+x^2)", -3, 3},     {"(x+1)/(x-4)", -3, 3},
    {"sqrt(x^2+1)", -3, 3},      {"tan(x)/x", 0.1, 1.5},  {"sin(x)/cos(x)", 0.1, 1}, {"-x^2*exp(x)", -2, 2},
    {"cosh(x)^2-sinh(x)^2", -2, 2},
};

} // namespace

TEST_CASE("derivative matches central difference on the corpus") {
    std::mt19937_64 rng(7);
    for (const auto& c : kCorpus) {
        CAPTURE(c.text);
        const Expr e = parse(c.text);
        const Expr de = differentiate(e);
        std::uniform_real_distribution<double> u(c.lo, c.hi);
        const double scale = std::max(1.0, std::max(std::abs(c.lo), std::abs(c.hi)));
        for (int i = 0; i < 100; ++i) {
            const double x = u(rng);
            const double h = 1e-5 * scale;
            // Richardson-extrapolated central difference keeps truncation error below 1e-10.
            const double d1 = (e(x + h) - e(x - h)) / (2 * h);
            const double d2 = (e(x + h / 2) - e(x - h / 2)) / h;
            const double fd = (4 * d2 - d1) / 3;
            const double sym = de(x);
            const double denom = std::max({std::abs(sym), std::abs(e(x)) / scale, 1e-8});
            CHECK(std::abs(sym - fd) / denom <= 1e-6);
        }
    }
}

TEST_CASE("compose and scaleshifts") {
    const Expr f = parse("x^2");
    CHECK(compose(f, parse("x+1"))(2.0) == 9.0);
    CHECK(v_scaleshift(Expr::variable(), {1.0, 0.0}).structurally_equal(Expr::variable()));
    const Expr vs = v_scaleshift(f, {3.0, -1.0});
    CHECK(vs(2.0) == 11.0);
    const Expr hs = h_scaleshift(f, {2.0, 1.0}); // f((u-1)/2)
    CHECK(hs(5.0) == 4.0);
    const Expr hv = hv_scaleshift(f, {2.0, 1.0}, {3.0, -1.0});
    CHECK(hv(5.0) == 11.0);
    CHECK_THROWS_AS(v_scaleshift(f, {0.0, 1.0}), PreconditionError);

    const Interval d = scaleshift_interval(Interval(0.0, 1.0, true, false), {-2.0, 1.0});
    CHECK(d.lo() == -1.0);
    CHECK(d.hi() == 1.0);
    CHECK(!d.lo_open());
    CHECK(d.hi_open());
}

TEST_CASE("closed-form inverse chains") {
    const auto check = [](const char* text, double x) {
        CAPTURE(text);
        const Expr e = parse(text);
        const auto inv = closed_form_inverse(e);
        REQUIRE(inv.has_value());
        CHECK((*inv)(e(x)) == doctest::Approx(x).epsilon(1e-12));
    };
    check("2*x", 1.5);
    check("x^3", 1.7);
    check("exp(x)", 0.3);
    check("ln(x)", 2.5);
    check("1/x", 4.0);
    check("3-2*x", 0.25);
    check("sinh(x)", -1.2);
    check("2^x", 1.25);
    check("ln(x)/ln(2)", 3.0);
    CHECK(!closed_form_inverse(parse("x+exp(x)")).has_value());
    CHECK(!closed_form_inverse(parse("sin(x)")).has_value());
}
