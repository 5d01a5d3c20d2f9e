#include "doctest.h"

#include "isomean/error.hpp"
#include "isomean/funmean.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace isomean;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

GeneratorMap id_map() {
    return GeneratorMap::identity();
}

GeneratorMap pos(const char* text) {
    return GeneratorMap(text, Interval::positive());
}

Frame frame(GeneratorMap g, GeneratorMap h) {
    return Frame({std::move(g), std::move(h)});
}

Function step_function() {
    return Function({1.0}, {Expr::constant(1.0), Expr::constant(3.0)});
}

bool near(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

struct Corpus {
    std::vector<const char*> fs{"sin(x)+2", "exp(x)", "x^2+1", "ln(x+2)+1", "1/(x+3)", "x", "cosh(x)", "3-x/2"};
    std::vector<const char*> gs{"x", "exp(x)", "ln(x)", "x^3", "sqrt(x)", "1/x"};
    std::vector<const char*> hs{"x", "ln(x)", "1/x", "x^2", "exp(x)", "x^-0.5"};
};

MeanProblem random_problem(std::mt19937_64& rng, const Corpus& c) {
    std::uniform_int_distribution<std::size_t> pf(0, c.fs.size() - 1);
    std::uniform_int_distribution<std::size_t> pg(0, c.gs.size() - 1);
    std::uniform_int_distribution<std::size_t> ph(0, c.hs.size() - 1);
    std::uniform_real_distribution<double> ux(0.2, 4.0);
    double a = ux(rng);
    double b = ux(rng);
    if (std::abs(a - b) < 0.05)
        b = a + 0.5;
    return MeanProblem::between(Function(parse(c.fs[pf(rng)])), a, b, frame(pos(c.gs[pg(rng)]), pos(c.hs[ph(rng)])));
}

} // namespace

TEST_CASE("general mean examples") {
    const MeanResult constant = dvi_mean({Function(Expr::constant(3.0)), Interval(0, 5), frame(pos("x^2"), pos("ln(x)"))});
    CHECK(constant.value == 3.0);
    CHECK(constant.method == MeanMethod::ClosedForm);

    const MeanResult step = dvi_mean({step_function(), Interval(0, 2),
                                      frame(GeneratorMap("2*x", Interval::real_line()),
                                            GeneratorMap("x+2", Interval::real_line()))});
    CHECK(near(step.value, 2.0, 1e-12));

    const MeanResult mid = dvi_mean({Function(Expr::variable()), Interval(1, 3), frame(id_map(), id_map())});
    CHECK(near(mid.value, 2.0, 1e-12));

    const MeanResult degenerate = dvi_mean({Function(parse("x^2")), Interval(1.5, 1.5), frame(id_map(), id_map())});
    CHECK(degenerate.value == 2.25);
}

TEST_CASE("class I examples and horizontal scaleshift invariance") {
    // h = f^{-1} gives the value at the midpoint.
    const MeanResult mid = class_I_mean(Function(parse("exp(x)")), Interval(0, 1), pos("ln(x)"));
    CHECK(near(mid.value, std::exp(0.5), 1e-12));
    // p-order mean of power integral of x.
    const MeanResult pw = class_I_mean(Function(Expr::variable()), Interval(1, 2), pos("x^3"));
    CHECK(near(pw.value, std::cbrt(15.0 / 4.0), 1e-12));

    const Expr f = parse("sin(x)+2");
    const GeneratorMap h = pos("x^2");
    const double base = class_I_mean(Function(f), Interval(0.3, 2.1), h).value;
    for (const ScaleShift s : {ScaleShift{2.0, 1.0}, ScaleShift{-0.5, 3.0}, ScaleShift{7.0, -4.0}}) {
        const Interval shifted = scaleshift_interval(Interval(0.3, 2.1), s);
        const double moved = class_I_mean(Function(h_scaleshift(f, s)), shifted, h).value;
        CHECK(near(moved, base, 1e-10));
    }
}

TEST_CASE("geometric mean examples") {
    CHECK(near(geometric_mean(Function(Expr::variable()), Interval(0, 1, true, false)).value, 1.0 / kE, 1e-8));
    CHECK(near(geometric_mean(Function(Expr::variable()), Interval(0, 2)).value, 2.0 / kE, 1e-8));
    CHECK(near(geometric_mean(Function(parse("sin(x)")), Interval(0, kPi, true, true)).value, 0.5, 1e-8));
    const MeanResult tan = geometric_mean(Function(parse("tan(x)")), Interval(0, kPi / 2, true, true));
    CHECK(near(tan.value, 1.0, 1e-6));
    CHECK(tan.generalized);
    CHECK(tan.method == MeanMethod::EndpointLimit);
    const MeanResult chord = geometric_mean(Function(parse("2*sqrt(1-x^2)")), Interval(-1, 1, true, true));
    CHECK(near(chord.value, 4.0 / kE, 1e-7));
}

TEST_CASE("geometric mean merges over a split interval") {
    const Function f(parse("x^2+exp(-x)"));
    for (double c : {0.4, 1.1, 2.7}) {
        const double a = 0.1;
        const double b = 3.0;
        const double lhs = (c - a) * std::log(geometric_mean(f, Interval(a, c)).value) +
                           (b - c) * std::log(geometric_mean(f, Interval(c, b)).value);
        const double rhs = (b - a) * std::log(geometric_mean(f, Interval(a, b)).value);
        CHECK(std::abs(std::exp(lhs - rhs) - 1.0) <= 1e-9);
    }
}

TEST_CASE("harmonic mean") {
    CHECK(harmonic_mean(Function(Expr::constant(3.0)), Interval(0, 1)).value == 3.0);
    CHECK(near(harmonic_mean(Function(Expr::variable()), Interval(1, 2)).value, 1.0 / std::log(2.0), 1e-12));
    CHECK(near(harmonic_mean(Function(parse("-x")), Interval(1, 2)).value, -1.0 / std::log(2.0), 1e-12));
    CHECK_THROWS_AS(harmonic_mean(Function(Expr::variable()), Interval(-1, 1)), PreconditionError);
}

TEST_CASE("class II examples and homogeneity") {
    const GeneratorMap cube("x^3", Interval::real_line());
    CHECK(near(class_II_mean(Function(parse("x^3")), Interval(1, 2), cube).value, 4.5, 1e-12));
    CHECK(near(class_II_mean(Function(parse("x^2")), Interval(1, 3), pos("1/x")).value, 3.0, 1e-12));
    const GeneratorMap g("exp(x)", Interval::real_line());
    const double e = class_II_mean(Function(parse("sin(x)")), Interval(0, 1), g).value;
    const double scaled = class_II_mean(Function(parse("2.5*sin(x)+4")), Interval(0, 1), g).value;
    CHECK(near(scaled, 2.5 * e + 4.0, 1e-12));
    const double flipped = class_II_mean(Function(parse("-3*sin(x)-1")), Interval(0, 1), g).value;
    CHECK(near(flipped, -3.0 * e - 1.0, 1e-12));
}

TEST_CASE("elastic mean examples") {
    CHECK(near(elastic_mean(Function(Expr::variable()), Interval(1, 4)).value, 3.0 / std::log(4.0), 1e-12));
    CHECK(near(elastic_mean(Function(parse("x^3")), Interval(1, 2)).value, 7.0 / std::log(8.0), 1e-12));
    const MeanResult tan = elastic_mean(Function(parse("tan(x)")), Interval(0, kPi / 2, true, true));
    CHECK(near(tan.value, 2.0 / kPi, 1e-5));
    CHECK(tan.generalized);
    CHECK_THROWS_AS(elastic_mean(Function(Expr::variable()), Interval(-1, 1)), PreconditionError);
}

TEST_CASE("class III examples") {
    const GeneratorMap cube("x^3", Interval::real_line());
    CHECK(near(class_III_mean(Function(Expr::variable()), Interval(1, 2), cube).value, std::cbrt(4.5), 1e-12));
    const GeneratorMap ex("exp(x)", Interval::real_line());
    CHECK(near(class_III_mean(Function(Expr::variable()), Interval(1, 2), ex).value,
               std::log((kE + kE * kE) / 2.0), 1e-12));
    CHECK(near(class_III_mean(Function(parse("sin(x)")), Interval(0, kPi), id_map()).value, 2.0 / kPi, 1e-12));
}

TEST_CASE("class VII examples") {
    CHECK(near(class_VII_mean(parse("x^2"), Interval(0, 3)).value, 4.0, 1e-10));
    CHECK(near(class_VII_mean(parse("x^0.5"), Interval(0, 4)).value, std::sqrt(1.0 / 3.0) * 2.0, 1e-10));
    CHECK(near(class_VII_mean(Expr::variable(), Interval(1, 3)).value, 2.0, 1e-12));
    CHECK(near(class_VII_mean(Expr::variable(), Interval(0, 2)).value, 1.0, 1e-12));
}

TEST_CASE("class II conjugation identities") {
    const ConjugationReport sq = conjugation_classII(parse("x^2"), parse("x^3"), Interval(1, 2));
    CHECK(sq.product_residual <= 1e-9);
    CHECK(sq.ratio_residual <= 1e-9);
    const ConjugationReport same = conjugation_classII(parse("x^2"), parse("x^2"), Interval(1, 2));
    CHECK(same.E == same.G);
    CHECK(same.product_residual == 0.0);
    const ConjugationReport mixed = conjugation_classII(parse("exp(x)"), parse("ln(x)"), Interval(1, 2));
    CHECK(mixed.product_residual <= 1e-9);
    CHECK(mixed.ratio_residual <= 1e-9);
}

TEST_CASE("partition oracle") {
    const MeanProblem constant{Function(Expr::constant(2.5)), Interval(0, 1), frame(pos("x^2"), pos("ln(x)"))};
    CHECK(near(dvi_mean_riemann_oracle(constant, 7), 2.5, 1e-14));

    const MeanProblem step{step_function(), Interval(0, 2),
                           frame(GeneratorMap("2*x", Interval::real_line()), GeneratorMap("x+2", Interval::real_line()))};
    CHECK(std::abs(dvi_mean_riemann_oracle(step, 100000) - 2.0) <= 1e-3);

    const MeanProblem geo{Function(Expr::variable()), Interval(0.1, 1), frame(id_map(), pos("ln(x)"))};
    const double exact = dvi_mean(geo).value;
    double previous = kInf;
    for (int n = 64; n <= 1 << 14; n *= 2) {
        const double err = std::abs(dvi_mean_riemann_oracle(geo, n) - exact);
        CHECK(err < previous);
        previous = err;
    }
    CHECK_THROWS_AS(dvi_mean_riemann_oracle(geo, 1), PreconditionError);
}

TEST_CASE("intermediate value property on random problems") {
    const Corpus c;
    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; ++i) {
        const MeanProblem p = random_problem(rng, c);
        CAPTURE(p.f.str());
        CAPTURE(p.frame[0].str());
        CAPTURE(p.frame[1].str());
        CAPTURE(p.fdomain.to_string());
        const MeanResult r = dvi_mean(p);
        const RangeEstimate range = estimate_range(p.f, p.fdomain);
        CHECK(r.value >= range.inf - 1e-9);
        CHECK(r.value <= range.sup + 1e-9);
        if (range.sup - range.inf > 1e-6) {
            CHECK(r.value > range.inf);
            CHECK(r.value < range.sup);
        }
    }
}

TEST_CASE("endpoint order and V-scaleshift invariance") {
    const Corpus c;
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        const MeanProblem p = random_problem(rng, c);
        CAPTURE(p.f.str());
        CAPTURE(p.frame[0].str());
        CAPTURE(p.frame[1].str());
        const double base = dvi_mean(p).value;
        const MeanProblem reversed = MeanProblem::between(p.f, p.fdomain.hi(), p.fdomain.lo(), p.frame);
        CHECK(dvi_mean(reversed).value == base);

        const GeneratorMap g2(v_scaleshift(p.frame[0].expr(), {-2.5, 7.0}), p.frame[0].domain());
        const GeneratorMap h2(v_scaleshift(p.frame[1].expr(), {3.0, -1.0}), p.frame[1].domain());
        const double moved = dvi_mean({p.f, p.fdomain, frame(g2, h2)}).value;
        CHECK(std::abs(moved - base) <= 1e-10 * std::abs(base));
    }
}

TEST_CASE("monotone dominance under bump perturbations") {
    const Corpus c;
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> ut(0.05, 0.95);
    std::uniform_real_distribution<double> uc(0.01, 2.0);
    for (int i = 0; i < 100; ++i) {
        const MeanProblem p = random_problem(rng, c);
        const double a = p.fdomain.lo();
        const double b = p.fdomain.hi();
        double x1 = a + ut(rng) * (b - a);
        double x2 = a + ut(rng) * (b - a);
        if (x1 > x2)
            std::swap(x1, x2);
        if (x2 - x1 < 1e-3)
            x2 = x1 + 1e-3 * (b - a);
        const Expr f = p.f.expr();
        const Expr x = Expr::variable();
        const Expr bump = Expr::constant(uc(rng)) * pow(x - Expr::constant(x1), Expr::constant(2.0)) *
                          pow(Expr::constant(x2) - x, Expr::constant(2.0));
        const Function m({x1, x2}, {f, f + bump, f});
        CAPTURE(p.f.str());
        CAPTURE(p.frame[0].str());
        CAPTURE(p.frame[1].str());
        const double base = dvi_mean(p).value;
        const double bumped = dvi_mean({m, p.fdomain, p.frame}).value;
        CHECK(bumped >= base - 1e-12 * std::max(1.0, std::abs(base)));
    }
}

TEST_CASE("quadrature agrees with the partition oracle") {
    const Corpus c;
    std::mt19937_64 rng(53);
    for (int i = 0; i < 30; ++i) {
        const MeanProblem p = random_problem(rng, c);
        CAPTURE(p.f.str());
        CAPTURE(p.frame[0].str());
        CAPTURE(p.frame[1].str());
        CHECK(std::abs(dvi_mean(p).value - dvi_mean_riemann_oracle(p, 1 << 16)) <= 1e-4);
    }
}

TEST_CASE("divergent and invalid problems") {
    const MeanProblem pole{Function(parse("1/x")), Interval(0, 1, true, false), frame(id_map(), id_map())};
    CHECK_THROWS_AS(dvi_mean(pole), DivergenceError);
    const MeanProblem outside{Function(parse("x-2")), Interval(0, 1), frame(id_map(), pos("ln(x)"))};
    CHECK_THROWS_AS(dvi_mean(outside), PreconditionError);
    const MeanProblem integrable{Function(parse("1/sqrt(x)")), Interval(0, 1, true, false), frame(id_map(), id_map())};
    const MeanResult r = dvi_mean(integrable);
    CHECK(near(r.value, 2.0, 1e-7));
    CHECK(r.generalized);
}
