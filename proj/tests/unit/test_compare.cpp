#include "doctest.h"

#include "isomean/compare.hpp"
#include "isomean/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace isomean;

namespace {

constexpr double kPi = std::numbers::pi;

GeneratorMap pos(const char* text) {
    return GeneratorMap(text, Interval::positive());
}

GeneratorMap real(const char* text) {
    return GeneratorMap(text, Interval::real_line());
}

Frame frame(GeneratorMap g, GeneratorMap h) {
    return Frame({std::move(g), std::move(h)});
}

Verdict run(const char* f, double a, double b, Frame left, Frame right) {
    return compare_function_means(ComparisonScenario::make(Function(parse(f)), Interval(a, b), std::move(left),
                                                           std::move(right)));
}

} // namespace

TEST_CASE("scenario detection") {
    const auto kind = [](const char* f, double a, double b, Frame l, Frame r) {
        return ComparisonScenario::make(Function(parse(f)), Interval(a, b), std::move(l), std::move(r)).kind;
    };
    CHECK(kind("x", 1, 2, frame(pos("x^2"), pos("ln(x)")), frame(pos("3*x^2+1"), pos("2-ln(x)"))) ==
          Scenario::Identical);
    CHECK(kind("x^2", 1, 2, frame(pos("x"), pos("ln(x)")), frame(pos("x"), pos("x^3"))) == Scenario::ClassI);
    CHECK(kind("tan(x)", 0.1, 1.5, frame(pos("ln(x)"), pos("x")), frame(pos("x"), pos("x"))) == Scenario::ClassII);
    CHECK(kind("x+1", 0, 2, frame(pos("x^3"), pos("x^3")), frame(pos("x^2"), pos("x^2"))) == Scenario::ClassIIIPair);
    CHECK(kind("x", 1, 2, frame(pos("x^2"), pos("x")), frame(pos("x"), pos("x^2"))) == Scenario::Exchanged);
    CHECK(kind("x^2", 1, 2, frame(pos("x^3"), pos("ln(x)")), frame(pos("x^3"), pos("1/x"))) == Scenario::SameIVDM);
    CHECK(kind("x^2", 1, 2, frame(pos("x^3"), pos("ln(x)")), frame(pos("exp(x)"), pos("ln(x)"))) ==
          Scenario::SamePVDM);
    CHECK(kind("x", 1, 2, frame(pos("x^3"), pos("ln(x)")), frame(pos("exp(x)"), pos("x^2"))) == Scenario::ClassV);
    CHECK(kind("x^2", 1, 2, frame(pos("x^3"), pos("x")), frame(pos("x"), pos("x^2"))) == Scenario::GeneralIV);
}

TEST_CASE("comparison corpus") {
    SUBCASE("tan with ln against identity") {
        const Verdict v = run("tan(x)", 0.1, 1.5, frame(pos("ln(x)"), pos("x")), frame(pos("x"), pos("x")));
        CHECK(implies(v.relation, Relation::LE));
        CHECK(v.criterion == "class-II-ratio");
        CHECK(v.case_number == 6);
        CHECK(*v.left < *v.right);
    }
    SUBCASE("squares against identity") {
        const Verdict v = run("x", 0.5, 2, frame(pos("x^2"), pos("x")), frame(pos("x"), pos("x")));
        CHECK(implies(v.relation, Relation::GE));
        CHECK(v.case_number == 5);
    }
    SUBCASE("sine against cosine") {
        const Interval q(0, kPi / 2);
        const Verdict v = run("x", 0.2, 1.3, frame(GeneratorMap("sin(x)", q), real("x")),
                              frame(GeneratorMap("cos(x)", q), real("x")));
        CHECK(implies(v.relation, Relation::LE));
    }
    SUBCASE("power means of higher order are larger") {
        const Verdict v = run("x+1", 0, 2, frame(pos("x^3"), pos("x^3")), frame(pos("x^2"), pos("x^2")));
        CHECK(v.relation == Relation::GT);
        CHECK(v.criterion == "class-III-pair");
    }
    SUBCASE("exchanged cosine and sine") {
        const Interval q(0, kPi / 2);
        const GeneratorMap c("cos(x)", q);
        const GeneratorMap s("sin(x)", q);
        const Verdict v = run("pi/2-x", 0.2, 1.3, frame(c, s), frame(s, c));
        CHECK(v.relation == Relation::LT);
        CHECK(v.criterion == "exchanged-DM");
        CHECK(*v.left == doctest::Approx(std::asin((std::cos(0.2) + std::cos(1.3)) / 2)).epsilon(1e-9));
        CHECK(*v.right == doctest::Approx(std::acos((std::sin(0.2) + std::sin(1.3)) / 2)).epsilon(1e-9));
    }
    SUBCASE("class I by the ratio of the PVDMs") {
        const Verdict v = run("x^2", 1, 2, frame(pos("x"), pos("x^3")), frame(pos("x"), pos("x")));
        CHECK(implies(v.relation, Relation::GE));
        CHECK(v.criterion == "class-I-ratio");
    }
    SUBCASE("different PVDMs need no monotone f") {
        const Verdict v = run("sin(x)+2", 0, 6, frame(pos("x^2"), pos("ln(x)")), frame(pos("x^2"), pos("x")));
        CHECK(v.relation == Relation::LE);
        CHECK(v.criterion == "different-PVDM");
    }
    SUBCASE("class V") {
        const Verdict v = run("x", 1, 3, frame(pos("x^2"), pos("x^2")), frame(pos("x"), pos("ln(x)")));
        CHECK(implies(v.relation, Relation::GE));
    }
}

TEST_CASE("open sub-cases stay undecided") {
    CHECK(run("x", 1, 2, frame(pos("x^2"), pos("x")), frame(pos("x"), pos("x^2"))).relation == Relation::Undecided);
    CHECK(run("3-x", 1, 2, frame(pos("x^2"), pos("x^2")), frame(pos("x"), pos("x"))).relation ==
          Relation::Undecided);
    CHECK(run("x^2", 1, 2, frame(pos("x^3"), pos("x")), frame(pos("x"), pos("x^2"))).relation ==
          Relation::Undecided);
}

TEST_CASE("constant ratios give equality") {
    const Verdict v = run("exp(x)", 0, 1, frame(pos("x^2"), pos("ln(x)")), frame(pos("3*x^2+1"), pos("2-ln(x)")));
    CHECK(v.relation == Relation::EQ);
    CHECK(std::abs(*v.left - *v.right) <= 1e-9 * std::abs(*v.right));
    const Verdict c = run("2", 0, 1, frame(pos("x^2"), pos("ln(x)")), frame(pos("x"), pos("x")));
    CHECK(c.relation == Relation::EQ);
}

TEST_CASE("verdicts are invariant under V-scaleshifts") {
    const Verdict base = run("tan(x)", 0.1, 1.5, frame(pos("ln(x)"), pos("x")), frame(pos("x"), pos("x")));
    const Verdict moved =
        run("tan(x)", 0.1, 1.5, frame(pos("4-2*ln(x)"), pos("3*x+1")), frame(pos("x/5"), pos("7-x")));
    CHECK(base.relation == moved.relation);
    const Verdict p1 = run("x+1", 0, 2, frame(pos("x^3"), pos("x^3")), frame(pos("x^2"), pos("x^2")));
    const Verdict p2 = run("x+1", 0, 2, frame(pos("2*x^3"), pos("1-x^3")), frame(pos("x^2+4"), pos("-x^2/3")));
    CHECK(p1.relation == p2.relation);
}

TEST_CASE("decided verdicts agree with the computed means") {
    const std::vector<const char*> fs{"exp(x)", "x^2+1", "ln(x+2)+1", "1/(x+3)", "x", "3-x/2", "sqrt(x)+0.5", "cosh(x)"};
    const std::vector<const char*> ms{"x", "exp(x)", "ln(x)", "x^3", "sqrt(x)", "1/x", "x^2", "x^-0.5"};
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pf(0, fs.size() - 1);
    std::uniform_int_distribution<std::size_t> pm(0, ms.size() - 1);
    std::uniform_real_distribution<double> ux(0.2, 4.0);
    int decided = 0;
    int contradictions = 0;
    for (int i = 0; i < 500; ++i) {
        double a = ux(rng);
        double b = ux(rng);
        if (std::abs(a - b) < 0.05)
            b = a + 0.5;
        const char* f = fs[pf(rng)];
        const bool pair = i % 4 == 0;
        const std::size_t g = pm(rng);
        const std::size_t h = pair ? g : pm(rng);
        const std::size_t G = i % 3 == 0 ? g : pm(rng);
        const std::size_t H = pair ? G : (i % 5 == 0 ? h : pm(rng));
        try {
            const Verdict v = run(f, std::min(a, b), std::max(a, b), frame(pos(ms[g]), pos(ms[h])),
                                  frame(pos(ms[G]), pos(ms[H])));
            if (v.decided())
                ++decided;
        } catch (const ContradictionError& e) {
            ++contradictions;
            MESSAGE(e.what());
        }
    }
    CHECK(contradictions == 0);
    CHECK(decided > 150);
}

TEST_CASE("first mean value theorem mean") {
    CHECK(first_mvt_mean(parse("x^2"), parse("3"), Interval(0, 2)).value == doctest::Approx(4.0 / 3).epsilon(1e-12));
    CHECK(first_mvt_mean(parse("x"), parse("x"), Interval(0, 1)).value == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(first_mvt_mean(parse("x"), parse("-x"), Interval(0, 1)).value == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK_THROWS_AS(first_mvt_mean(parse("x"), parse("x-0.5"), Interval(0, 1)), PreconditionError);
}
