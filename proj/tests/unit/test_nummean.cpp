#include "doctest.h"

#include "isomean/error.hpp"
#include "isomean/nummean.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace isomean;

namespace {

// Positive root of cos x - x sin x (where sin(e^y) stops being convex).
constexpr double kSinLnThreshold = 0.860333589019379762;

std::vector<GeneratorMap> corpus() {
    const Interval pos = Interval::positive();
    return {GeneratorMap::identity(),       GeneratorMap("x^2", pos),       GeneratorMap("ln(x)", pos),
            GeneratorMap("exp(x)", Interval::real_line()), GeneratorMap("x^3", Interval::real_line()),
            GeneratorMap("1/x", pos),       GeneratorMap("x+exp(x)", Interval::real_line()),
            GeneratorMap("sinh(x)", Interval::real_line()), GeneratorMap("x^-0.5", pos),
            GeneratorMap("x*ln(x)", Interval(1, kInf, false, true))};
}

WeightedTuple random_tuple(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_int_distribution<int> un(2, 6);
    std::uniform_real_distribution<double> ux(lo, hi);
    std::uniform_real_distribution<double> uw(0.05, 1.0);
    WeightedTuple t;
    const int n = un(rng);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        t.xs.push_back(ux(rng));
        t.ps.push_back(uw(rng));
        total += t.ps.back();
    }
    for (double& p : t.ps)
        p /= total;
    return t;
}

} // namespace

TEST_CASE("weighted mean examples") {
    const GeneratorMap id = GeneratorMap::identity();
    CHECK(iso_weighted_mean({{1, 3}, {0.5, 0.5}}, id) == 2.0);
    const GeneratorMap sq("x^2", Interval::positive());
    // sqrt(2.5)
    CHECK(std::abs(iso_weighted_mean({{1, 2}, {0.5, 0.5}}, sq) - 1.58113883008418966600) <= 1e-14);
    const GeneratorMap ln("ln(x)", Interval::positive());
    CHECK(iso_weighted_mean({{1, 4}, {0.5, 0.5}}, ln) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(iso_weighted_mean({{0.7, 0.7, 0.7}, {0.2, 0.3, 0.5}}, ln) == 0.7);
    CHECK(iso_mean({1, 2, 3}, id) == 2.0);
    CHECK(iso_mean({2, 8}, ln) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("weighted mean preconditions") {
    const GeneratorMap ln("ln(x)", Interval::positive());
    CHECK_THROWS_AS(iso_weighted_mean({{1, 2}, {0.5, 0.6}}, ln), PreconditionError);
    CHECK_THROWS_AS(iso_weighted_mean({{1, 2}, {1.5, -0.5}}, ln), PreconditionError);
    CHECK_THROWS_AS(iso_weighted_mean({{1, 2}, {1.0}}, ln), PreconditionError);
    CHECK_THROWS_AS(iso_weighted_mean({{-1, 2}, {0.5, 0.5}}, ln), PreconditionError);
    CHECK_THROWS_AS(iso_mean({1}, ln), PreconditionError);
}

TEST_CASE("bracketing, monotonicity and V-scaleshift invariance") {
    const auto maps = corpus();
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, maps.size() - 1);
    for (int i = 0; i < 1000; ++i) {
        const GeneratorMap& g = maps[pick(rng)];
        CAPTURE(g.str());
        const WeightedTuple t = random_tuple(rng, 1.0, 4.0);
        const double m = iso_weighted_mean(t, g);
        const auto [lo, hi] = std::minmax_element(t.xs.begin(), t.xs.end());
        CHECK(m > *lo);
        CHECK(m < *hi);

        WeightedTuple up = t;
        up.xs[i % up.xs.size()] += 1e-3;
        CHECK(iso_weighted_mean(up, g) > m);

        if (i % 5 == 0) {
            const GeneratorMap shifted(v_scaleshift(g.expr(), {-2.5, 7.0}), g.domain());
            const double ms = iso_weighted_mean(t, shifted);
            CHECK(std::abs(ms - m) <= 1e-10 * std::abs(m));
        }
    }
}

TEST_CASE("number-mean comparison examples") {
    const GeneratorMap sin_map("sin(x)", Interval(0, 1.5));
    const GeneratorMap ln_map("ln(x)", Interval::positive());
    const Verdict below = compare_number_means(sin_map, ln_map, Interval(0, kSinLnThreshold, true, true));
    CHECK(below.relation == Relation::GE);
    CHECK(below.strict_when_distinct);
    CHECK(below.criterion == "number-ratio");
    CHECK(std::find(below.corroborated_by.begin(), below.corroborated_by.end(), "odd-count") !=
          below.corroborated_by.end());
    const Verdict above = compare_number_means(sin_map, ln_map, Interval(kSinLnThreshold, 1.5, true, false));
    CHECK(above.relation == Relation::LE);
    const Verdict across = compare_number_means(sin_map, ln_map, Interval(0.5, 1.2));
    CHECK(across.relation == Relation::Undecided);

    const Verdict hyp = compare_number_means(GeneratorMap("sinh(x)", Interval::real_line()),
                                             GeneratorMap("cosh(x)", Interval(0, kInf, false, true)),
                                             Interval::positive());
    CHECK(hyp.relation == Relation::LE);

    const Interval pos = Interval::positive();
    CHECK(compare_number_means(GeneratorMap("x^3", pos), GeneratorMap("x^0.5", pos), pos).relation == Relation::GE);
    CHECK(compare_number_means(GeneratorMap("x^2", pos), GeneratorMap("x^-1", pos), pos).relation == Relation::GE);
    CHECK(compare_number_means(GeneratorMap("ln(x)", pos), GeneratorMap("x^-1", pos), pos).relation == Relation::GE);
    CHECK(compare_number_means(GeneratorMap("3*x^2+1", pos), GeneratorMap("x^2", pos), pos).relation ==
          Relation::EQ);
}

TEST_CASE("verdict soundness on random tuples") {
    struct Case {
        const char* g;
        const char* h;
        Interval dom;
        Interval draw;
    };
    const Case cases[] = {
        {"sin(x)", "ln(x)", Interval(0, kSinLnThreshold, true, true), Interval(0.01, 0.86)},
        {"sin(x)", "ln(x)", Interval(kSinLnThreshold, 1.5), Interval(0.861, 1.5)},
        {"sinh(x)", "cosh(x)", Interval::positive(), Interval(0.01, 8)},
        {"x^3", "x^0.5", Interval::positive(), Interval(0.01, 20)},
        {"exp(x)", "x", Interval(-3, 3), Interval(-3, 3)},
        {"1/x", "ln(x)", Interval::positive(), Interval(0.1, 10)},
        {"x+exp(x)", "x", Interval(-2, 2), Interval(-2, 2)},
    };
    std::mt19937_64 rng(29);
    for (const auto& c : cases) {
        CAPTURE(c.g);
        CAPTURE(c.h);
        const GeneratorMap g(c.g, c.dom);
        const GeneratorMap h(c.h, c.dom);
        const Verdict v = compare_number_means(g, h, c.dom);
        REQUIRE(v.decided());
        for (int i = 0; i < 1000; ++i) {
            const WeightedTuple t = random_tuple(rng, c.draw.lo(), c.draw.hi());
            const double l = iso_weighted_mean(t, g);
            const double r = iso_weighted_mean(t, h);
            const double tol = 1e-10 * std::max({1.0, std::abs(l), std::abs(r)});
            const auto [lo, hi] = std::minmax_element(t.xs.begin(), t.xs.end());
            const bool distinct = *hi - *lo >= 1e-6;
            if (v.relation == Relation::GE) {
                CHECK(l >= r - tol);
                if (distinct && v.strict_when_distinct)
                    CHECK(l > r);
            } else if (v.relation == Relation::LE) {
                CHECK(l <= r + tol);
                if (distinct && v.strict_when_distinct)
                    CHECK(l < r);
            }
        }
    }
}

TEST_CASE("ratio criterion and odd-count rule agree") {
    const Interval pos = Interval::positive();
    const char* maps[] = {"x", "x^2", "ln(x)", "1/x", "exp(x)", "x^-2", "sqrt(x)", "exp(-x)", "x^3+x"};
    int both = 0;
    for (const char* a : maps) {
        for (const char* b : maps) {
            if (std::string(a) == b)
                continue;
            CAPTURE(a);
            CAPTURE(b);
            const Verdict v = compare_number_means(GeneratorMap(a, pos), GeneratorMap(b, pos), Interval(0.2, 5));
            if (v.criterion != "number-ratio" || v.relation == Relation::EQ)
                continue;
            ++both;
            CHECK(std::find(v.corroborated_by.begin(), v.corroborated_by.end(), "odd-count") !=
                  v.corroborated_by.end());
        }
    }
    CHECK(both >= 50);
}
