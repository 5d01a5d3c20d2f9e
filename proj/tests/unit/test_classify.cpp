#include "doctest.h"

#include "isomean/classify.hpp"
#include "isomean/error.hpp"

#include <cmath>
#include <numbers>

using namespace isomean;

namespace {
constexpr double kPi = std::numbers::pi;
// Positive root of cos x - x sin x, where sin(e^y) stops being convex.
constexpr double kSinLnThreshold = 0.860333589019379762;
} // namespace

TEST_CASE("monotonicity examples") {
    CHECK(classify_monotonicity(parse("x^2"), Interval(0, 2)).cls == MonotonicityClass::StrictlyIncreasing);
    CHECK(classify_monotonicity(parse("ln(x)"), Interval(0.1, 10)).cls == MonotonicityClass::StrictlyIncreasing);
    CHECK(classify_monotonicity(parse("cos(x)"), Interval(0, kPi)).cls == MonotonicityClass::StrictlyDecreasing);
    CHECK(classify_monotonicity(parse("3"), Interval(0, 1)).cls == MonotonicityClass::Constant);
    CHECK(classify_monotonicity(parse("x^3"), Interval(-1, 1)).cls == MonotonicityClass::StrictlyIncreasing);
    CHECK(classify_monotonicity(parse("exp(x)"), Interval::real_line()).cls ==
          MonotonicityClass::StrictlyIncreasing);
    CHECK(classify_monotonicity(parse("cosh(x)/sinh(x)"), Interval::positive()).cls ==
          MonotonicityClass::StrictlyDecreasing);

    const Monotonicity m = classify_monotonicity(parse("sin(x)"), Interval(0, kPi));
    REQUIRE(m.cls == MonotonicityClass::NonMonotone);
    REQUIRE(m.witness.has_value());
    CHECK(m.witness->first < kPi / 2);
    CHECK(m.witness->second > kPi / 2);
    CHECK(m.witness->second - m.witness->first < 0.1);
    CHECK_THROWS_AS(classify_monotonicity(parse("x"), Interval(1, 1)), PreconditionError);
}

TEST_CASE("monotonicity is falsifiable") {
    // Any reversal visible on the grid rules out a strict class.
    const char* wavy[] = {"sin(5*x)", "x^2", "x+0.3*sin(20*x)", "abs(x)", "cos(x)*x"};
    for (const char* text : wavy) {
        CAPTURE(text);
        const Monotonicity m = classify_monotonicity(parse(text), Interval(-2, 2));
        CHECK(m.cls == MonotonicityClass::NonMonotone);
        REQUIRE(m.witness.has_value());
        const Expr de = differentiate(parse(text));
        const auto sgn = [&](double x) {
            try {
                return de(x) > 0 ? 1 : -1;
            } catch (const DomainError&) {
                return 0;
            }
        };
        CHECK(sgn(m.witness->first) * sgn(m.witness->second) <= 0);
    }
}

TEST_CASE("convexity examples") {
    CHECK(classify_convexity(parse("x^2"), Interval(-5, 3)).cls == ConvexityClass::StrictlyConvex);
    CHECK(classify_convexity(parse("x^2"), Interval::real_line()).cls == ConvexityClass::StrictlyConvex);
    CHECK(classify_convexity(parse("ln(x)"), Interval::positive()).cls == ConvexityClass::StrictlyConcave);
    CHECK(classify_convexity(parse("2*x+1"), Interval(0, 1)).cls == ConvexityClass::Affine);
    CHECK(classify_convexity(parse("sin(exp(x))"), Interval(-kInf, std::log(kSinLnThreshold), true, true)).cls ==
          ConvexityClass::Convex);
    const Convexity mixed = classify_convexity(parse("sin(x)"), Interval(-1, 1));
    CHECK(mixed.cls == ConvexityClass::Mixed);
    REQUIRE(mixed.witness.has_value());
    CHECK(mixed.witness->first.hi() <= mixed.witness->second.lo() + 1e-12);
    CHECK(classify_convexity(parse("abs(x)"), Interval(-1, 1)).convex());
}

TEST_CASE("scaleshifts and convexity") {
    const char* corpus[] = {"x^2", "ln(x)", "exp(x)", "sqrt(x)", "x^3"};
    const Interval d(0.5, 3);
    for (const char* text : corpus) {
        CAPTURE(text);
        const Expr f = parse(text);
        const ConvexityClass base = classify_convexity(f, d).cls;
        const ScaleShift h{1.7, -0.4};
        CHECK(classify_convexity(h_scaleshift(f, h), scaleshift_interval(d, h)).cls == base);
        const ScaleShift hneg{-2.0, 1.0};
        CHECK(classify_convexity(h_scaleshift(f, hneg), scaleshift_interval(d, hneg)).cls == base);
        CHECK(classify_convexity(v_scaleshift(f, {3.0, 2.0}), d).cls == base);
        const ConvexityClass flipped = classify_convexity(v_scaleshift(f, {-3.0, 2.0}), d).cls;
        if (base == ConvexityClass::StrictlyConvex)
            CHECK(flipped == ConvexityClass::StrictlyConcave);
        if (base == ConvexityClass::StrictlyConcave)
            CHECK(flipped == ConvexityClass::StrictlyConvex);
    }
}

TEST_CASE("endpoint limits") {
    CHECK(endpoint_limit(parse("ln(x)"), Interval::positive(), Side::Lower) == -kInf);
    CHECK(endpoint_limit(parse("ln(x)"), Interval::positive(), Side::Upper) == kInf);
    CHECK(endpoint_limit(parse("exp(x)"), Interval::real_line(), Side::Lower) == doctest::Approx(0.0));
    CHECK(endpoint_limit(parse("tan(x)"), Interval(0, kPi / 2, true, true), Side::Upper) == kInf);
    CHECK(endpoint_limit(parse("x*ln(x)"), Interval(0, 1, true, false), Side::Lower) == doctest::Approx(0.0));
    CHECK(endpoint_limit(parse("1/x"), Interval::positive(), Side::Upper) == doctest::Approx(0.0));
    CHECK(endpoint_limit(parse("x^2"), Interval(0, 2), Side::Upper) == 4.0);
}

TEST_CASE("range estimates") {
    const RangeEstimate r = estimate_range(Function(parse("x")), Interval(0, 1, true, true));
    CHECK(r.inf == 0.0);
    CHECK(r.sup == 1.0);
    CHECK(!r.inf_attained);
    CHECK(!r.sup_attained);
    const RangeEstimate s = estimate_range(Function(parse("sin(x)")), Interval(0, kPi));
    CHECK(s.sup == doctest::Approx(1.0));
    CHECK(s.inf == doctest::Approx(0.0));
    const Function step({1.0}, {Expr(1.0), Expr(3.0)});
    const RangeEstimate t = estimate_range(step, Interval(0, 2));
    CHECK(t.inf == 1.0);
    CHECK(t.sup == 3.0);
}
