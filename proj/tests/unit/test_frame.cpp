#include "doctest.h"

#include "isomean/error.hpp"
#include "isomean/frame.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace isomean;

namespace {
constexpr double kPi = std::numbers::pi;

double rel(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}
} // namespace

TEST_CASE("invert_eval examples") {
    const GeneratorMap lin("2*x", Interval::real_line());
    CHECK(invert_eval(lin, 3.0) == 1.5);
    const GeneratorMap cube("x^3", Interval(0, 2));
    CHECK(invert_eval(cube, 8.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(cube.inverse_strategy() == InverseStrategy::ClosedForm);

    const GeneratorMap g("x+exp(x)", Interval::real_line());
    CHECK(g.inverse_strategy() == InverseStrategy::BracketedNumeric);
    CHECK(std::abs(invert_eval(g, 1.0)) <= 1e-12);
    // Root of x + e^x = 2, mpmath at 30 digits.
    CHECK(std::abs(invert_eval(g, 2.0) - 0.442854401002388583) <= 1e-12);
    CHECK(std::abs(g(invert_eval(g, 2.0)) - 2.0) <= 1e-12);

    CHECK_THROWS_AS(invert_eval(cube, 9.0), DomainError);
    CHECK_THROWS_AS(GeneratorMap("sin(x)", Interval(0, kPi)), NotMonotoneError);
}

TEST_CASE("generator map images") {
    const GeneratorMap ln("ln(x)", Interval::positive());
    CHECK(ln.image() == Interval::real_line());
    const GeneratorMap e("exp(x)", Interval::real_line());
    CHECK(e.image().lo() == 0.0);
    CHECK(e.image().hi() == kInf);
    CHECK(e.image().lo_open());
    const GeneratorMap recip("1/x", Interval::positive());
    CHECK(!recip.increasing());
    CHECK(recip.image().lo() == doctest::Approx(0.0));
    CHECK(recip.image().hi() == kInf);
    const GeneratorMap c("cos(x)", Interval(0, kPi));
    CHECK(c.image() == Interval(-1, 1));
}

TEST_CASE("invert_eval after evaluate is the identity on the corpus") {
    const std::pair<const char*, Interval> corpus[] = {
        {"2*x", Interval::real_line()},         {"x^3", Interval(0, 2)},
        {"x+exp(x)", Interval(-5, 3)},          {"ln(x)", Interval::positive()},
        {"exp(x)", Interval(-20, 20)},          {"1/x", Interval(0.1, 10)},
        {"sin(x)", Interval(-1.5, 1.5)},        {"cos(x)", Interval(0, kPi)},
        {"sinh(x)", Interval(-3, 3)},           {"cosh(x)", Interval(0.1, 4)},
        {"tan(x)", Interval(-1.5, 1.5)},        {"x^0.25", Interval(0.01, 16)},
        {"x^-2", Interval(0.2, 5)},             {"x*exp(x)", Interval(0, 3)},
        {"x^3+x", Interval(-2, 2)},             {"ln(x)+x^2", Interval(0.1, 3)},
        {"2^x", Interval(-4, 4)},               {"x/(1+x)", Interval(0, 10)},
    };
    std::mt19937_64 rng(11);
    for (const auto& [text, d] : corpus) {
        CAPTURE(text);
        const GeneratorMap g(text, d);
        const double lo = std::isfinite(d.lo()) ? d.lo() : -5.0;
        const double hi = std::isfinite(d.hi()) ? d.hi() : 5.0;
        std::uniform_real_distribution<double> u(lo, hi);
        for (int i = 0; i < 100; ++i) {
            double x = u(rng);
            if (!d.contains(x))
                continue;
            CHECK(rel(invert_eval(g, g(x)), x) <= 1e-11);
        }
    }
}

TEST_CASE("frames") {
    const Frame one = make_frame({GeneratorMap("2*x", Interval::real_line())});
    CHECK(one.dimension() == 1);
    const Frame two = make_frame({GeneratorMap("2*x", Interval::real_line()), GeneratorMap("y+2", Interval::real_line())});
    CHECK(two.dimension() == 2);
    CHECK_THROWS_AS(make_frame(std::vector<GeneratorMap>{}), PreconditionError);
    CHECK_THROWS_AS(make_frame(std::vector<std::pair<Expr, Interval>>{{parse("sin(x)"), Interval(0, kPi)}}), NotMonotoneError);

    const Frame inv = invert_frame(one);
    CHECK(inv[0](3.0) == 1.5);
    const Frame cube = make_frame({GeneratorMap("x^3", Interval(0, 2))});
    const Frame cinv = invert_frame(cube);
    CHECK(cinv[0].domain() == Interval(0, 8));
    CHECK(cinv[0](8.0) == doctest::Approx(2.0));
    const Frame back = invert_frame(cinv);
    CHECK(back[0].domain() == cube[0].domain());
    CHECK(back[0].image() == cube[0].image());
    const Frame xe = make_frame({GeneratorMap("x+exp(x)", Interval(-2, 2))});
    const Frame xe2 = invert_frame(invert_frame(xe));
    CHECK(xe2[0].domain() == xe[0].domain());
    CHECK(xe2[0].image() == xe[0].image());
}

TEST_CASE("frame round trip on random base points") {
    const Frame fr = make_frame({GeneratorMap("x+exp(x)", Interval(-3, 3)), GeneratorMap("ln(y)", Interval::positive())});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-3, 3);
    std::uniform_real_distribution<double> uy(0.01, 50);
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> p{ux(rng), uy(rng)};
        const auto q = fr.apply_inverse(fr.apply(p));
        CHECK(rel(q[0], p[0]) <= 1e-10);
        CHECK(rel(q[1], p[1]) <= 1e-10);
    }
}

TEST_CASE("bonding") {
    const Frame fr = make_frame({GeneratorMap("x^2", Interval::positive()), GeneratorMap("ln(y)", Interval::positive())});
    CHECK(check_bonded(Function(parse("x")), Interval(1, 2), fr).bonded());
    const BondedReport bad = check_bonded(Function(parse("x-5")), Interval(1, 2), fr);
    CHECK(!bad.bonded());
    CHECK(!bad.range_in_base);

    const Frame step_frame = make_frame({GeneratorMap("2*x", Interval::real_line()), GeneratorMap("y+2", Interval::real_line())});
    const Function step({1.0}, {Expr(1.0), Expr(3.0)});
    CHECK(check_bonded(step, Interval(0, 2), step_frame).bonded());

    const Frame geo = make_frame({GeneratorMap::identity(), GeneratorMap("ln(y)", Interval::positive())});
    const BondedReport edge = check_bonded(Function(parse("x")), Interval(0, 1, true, true), geo);
    CHECK(edge.range_in_base);
    CHECK(!edge.hull_ok);

    // Bonded ranges map inside the image of h.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1, 2);
    const BondedReport ok = check_bonded(Function(parse("x^2+1")), Interval(1, 2), fr);
    REQUIRE(ok.bonded());
    for (int i = 0; i < 50; ++i) {
        const double v = std::pow(u(rng), 2) + 1;
        CHECK(fr[1].image().contains(fr[1](v)));
    }
}
