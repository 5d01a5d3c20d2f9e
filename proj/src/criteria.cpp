#include "isomean/criteria.hpp"

namespace isomean {

std::string to_string(Trend t) {
    switch (t) {
    case Trend::Increasing:
        return "increasing";
    case Trend::Decreasing:
        return "decreasing";
    case Trend::Constant:
        return "constant";
    case Trend::None:
        break;
    }
    return "not monotone";
}

Trend trend_of(const Monotonicity& m) noexcept {
    switch (m.cls) {
    case MonotonicityClass::StrictlyIncreasing:
        return Trend::Increasing;
    case MonotonicityClass::StrictlyDecreasing:
        return Trend::Decreasing;
    case MonotonicityClass::Constant:
        return Trend::Constant;
    default:
        return Trend::None;
    }
}

namespace {

TrendReport classify_ratio(const Expr& ratio, const Interval& d) {
    TrendReport out;
    out.expr = ratio.str();
    if (d.degenerate()) {
        out.trend = Trend::Constant;
        return out;
    }
    out.detail = classify_monotonicity(ratio, d);
    out.trend = trend_of(out.detail);
    return out;
}

} // namespace

TrendReport abs_ratio_trend(const GeneratorMap& a, const GeneratorMap& b, const Interval& d) {
    const double m = a.increasing() == b.increasing() ? 1.0 : -1.0;
    Expr ratio = a.derivative() / b.derivative();
    if (m < 0)
        ratio = -ratio;
    return classify_ratio(ratio, d);
}

TrendReport ratio_trend(const GeneratorMap& a, const GeneratorMap& b, const Interval& d) {
    return classify_ratio(a.derivative() / b.derivative(), d);
}

Convexity composite_convexity(const GeneratorMap& a, const GeneratorMap& b, const Interval& d) {
    const Interval image = b.restricted(d).image();
    if (image.degenerate()) {
        Convexity c;
        c.cls = ConvexityClass::Affine;
        return c;
    }
    return classify_convexity(compose(a.expr(), b.inverse_expr()), image);
}

} // namespace isomean
