#include "isomean/compare.hpp"

#include "isomean/criteria.hpp"
#include "isomean/error.hpp"
#include "isomean/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isomean {

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::Identical:
        return "identical-frames";
    case Scenario::ClassI:
        return "class-I";
    case Scenario::ClassII:
        return "class-II";
    case Scenario::ClassIIIPair:
        return "class-III-pair";
    case Scenario::Exchanged:
        return "exchanged-DMs";
    case Scenario::SameIVDM:
        return "same-IVDM";
    case Scenario::SamePVDM:
        return "same-PVDM";
    case Scenario::ClassV:
        return "class-V";
    case Scenario::GeneralIV:
        break;
    }
    return "general-IV";
}

namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

Interval range_hull(const Function& f, const Interval& d) {
    if (d.degenerate()) {
        const double v = f(d.lo());
        return Interval(v, v);
    }
    return estimate_range(f, d).hull();
}

Interval span(const Interval& a, const Interval& b) {
    const bool lo_a = a.lo() < b.lo() || (a.lo() == b.lo() && !a.lo_open());
    const bool hi_a = a.hi() > b.hi() || (a.hi() == b.hi() && !a.hi_open());
    return Interval(lo_a ? a.lo() : b.lo(), hi_a ? a.hi() : b.hi(), lo_a ? a.lo_open() : b.lo_open(),
                    hi_a ? a.hi_open() : b.hi_open());
}

// a and b differ by a V-scaleshift on `region`.
bool equivalent(const GeneratorMap& a, const GeneratorMap& b, const Interval& region) {
    if (a.expr().str() == b.expr().str())
        return true;
    if (region.degenerate() || !a.domain().contains(region) || !b.domain().contains(region))
        return false;
    try {
        return ratio_trend(a, b, region).trend == Trend::Constant;
    } catch (const Error&) {
        return false;
    }
}

bool identity_like(const GeneratorMap& a, const Interval& region) {
    if (a.is_identity())
        return true;
    if (region.degenerate() || !a.domain().contains(region))
        return false;
    try {
        return classify_monotonicity(a.derivative(), region).cls == MonotonicityClass::Constant;
    } catch (const Error&) {
        return false;
    }
}

bool is_increasing(Trend t) {
    return t == Trend::Increasing || t == Trend::Constant;
}

bool is_decreasing(Trend t) {
    return t == Trend::Decreasing || t == Trend::Constant;
}

bool monotone(Trend t) {
    return t == Trend::Increasing || t == Trend::Decreasing;
}

struct Context {
    const ComparisonScenario& s;
    const GeneratorMap& g;
    const GeneratorMap& h;
    const GeneratorMap& G;
    const GeneratorMap& H;
    Interval d;
    Interval range;
    Trend f_trend = Trend::None;

    bool f_strict() const { return monotone(f_trend); }
};

Relation strengthen(Relation r, bool strict) {
    if (!strict)
        return r;
    if (r == Relation::GE)
        return Relation::GT;
    if (r == Relation::LE)
        return Relation::LT;
    return r;
}

Verdict undecided(const std::string& criterion, std::string note) {
    Verdict v;
    v.notes.push_back(criterion + ": " + std::move(note));
    return v;
}

Verdict decided(Relation r, const std::string& criterion, int case_number) {
    Verdict v;
    v.relation = r;
    v.criterion = criterion;
    v.case_number = case_number;
    v.resolution = kSampleCount;
    return v;
}

std::string trend_note(const char* what, const TrendReport& t, const char* where) {
    return std::string(what) + " = " + t.expr + " is " + to_string(t.trend) + " on " + where;
}

// Jensen-type cases for g(G^{-1}) on G(region).
Relation jensen(bool g_increasing, const Convexity& c, int& case_number) {
    if (c.cls == ConvexityClass::Affine)
        return Relation::EQ;
    if (c.convex()) {
        case_number = g_increasing ? 1 : 3;
        return g_increasing ? Relation::GE : Relation::LE;
    }
    if (c.concave()) {
        case_number = g_increasing ? 2 : 4;
        return g_increasing ? Relation::LE : Relation::GE;
    }
    return Relation::Undecided;
}

Verdict class_I(const Context& c) {
    const TrendReport t = abs_ratio_trend(c.h, c.H, c.range);
    Verdict v;
    if (t.trend == Trend::Constant) {
        v = decided(Relation::EQ, "class-I-ratio", 0);
    } else if (t.trend == Trend::Increasing) {
        v = decided(Relation::GE, "class-I-ratio", 5);
    } else if (t.trend == Trend::Decreasing) {
        v = decided(Relation::LE, "class-I-ratio", 6);
    } else {
        const Convexity cv = composite_convexity(c.h, c.H, c.range);
        int k = 0;
        const Relation r = jensen(c.h.increasing(), cv, k);
        v = r == Relation::Undecided ? undecided("class-I", "neither |h'/H'| monotone nor h(H^-1) convex or concave")
                                     : decided(r, "class-I-jensen", k);
        v.notes.push_back("h(H^-1) on H(I) is " + to_string(cv.cls));
    }
    v.notes.push_back(trend_note("|h'/H'|", t, "I"));
    return v;
}

Verdict class_II(const Context& c) {
    if (!c.f_strict())
        return undecided("class-II", "f is not strictly monotone");
    const bool f_inc = c.f_trend == Trend::Increasing;
    const TrendReport t = abs_ratio_trend(c.g, c.G, c.d);
    Verdict v;
    if (t.trend == Trend::Constant) {
        v = decided(Relation::EQ, "class-II-ratio", 0);
    } else if (monotone(t.trend)) {
        const bool together = (t.trend == Trend::Increasing) == f_inc;
        v = decided(strengthen(together ? Relation::GE : Relation::LE, true), "class-II-ratio", together ? 5 : 6);
    } else {
        const Convexity cv = composite_convexity(c.g, c.G, c.d);
        int k = 0;
        Relation r = jensen(c.g.increasing(), cv, k);
        if (!f_inc)
            r = mirrored(r);
        v = r == Relation::Undecided ? undecided("class-II", "neither |g'/G'| monotone nor g(G^-1) convex or concave")
                                     : decided(strengthen(r, true), "class-II-jensen", k);
        v.notes.push_back("g(G^-1) on G([a,b]) is " + to_string(cv.cls));
    }
    v.notes.push_back(trend_note("|g'/G'|", t, "[a,b]"));
    return v;
}

// |g'/G'| on [a,b] with f, |h'/H'| on I.
Verdict general_IV(const Context& c, const std::string& criterion) {
    if (!c.f_strict())
        return undecided(criterion, "f is not strictly monotone");
    const bool f_inc = c.f_trend == Trend::Increasing;
    const TrendReport t1 = abs_ratio_trend(c.g, c.G, c.d);
    const TrendReport t2 = abs_ratio_trend(c.h, c.H, c.range);
    Verdict v;
    const bool together = f_inc ? is_increasing(t1.trend) : is_decreasing(t1.trend);
    const bool opposite = f_inc ? is_decreasing(t1.trend) : is_increasing(t1.trend);
    const bool strict = monotone(t1.trend) && monotone(t2.trend);
    if (t1.trend == Trend::Constant && t2.trend == Trend::Constant)
        v = decided(Relation::EQ, criterion, 0);
    else if (together && is_increasing(t2.trend))
        v = decided(strengthen(Relation::GE, strict), criterion, 1);
    else if (opposite && is_decreasing(t2.trend))
        v = decided(strengthen(Relation::LE, strict), criterion, 2);
    else
        v = undecided(criterion, "an open sub-case of the partial solution");
    v.notes.push_back(trend_note("|g'/G'|", t1, "[a,b]"));
    v.notes.push_back(trend_note("|h'/H'|", t2, "I"));
    return v;
}

// h = H: only the IVDMs differ.
Verdict different_ivdm(const Context& c) {
    if (!c.f_strict())
        return undecided("different-IVDM", "f is not strictly monotone");
    const bool f_inc = c.f_trend == Trend::Increasing;
    const TrendReport t = abs_ratio_trend(c.g, c.G, c.d);
    Verdict v;
    if (t.trend == Trend::Constant)
        v = decided(Relation::EQ, "different-IVDM", 0);
    else if (monotone(t.trend)) {
        const bool together = (t.trend == Trend::Increasing) == f_inc;
        v = decided(strengthen(together ? Relation::GE : Relation::LE, true), "different-IVDM", together ? 1 : 2);
    } else
        v = undecided("different-IVDM", "|g'/G'| is not monotone");
    v.notes.push_back(trend_note("|g'/G'|", t, "[a,b]"));
    return v;
}

// g = G: only the PVDMs differ.
Verdict different_pvdm(const Context& c) {
    const TrendReport t = abs_ratio_trend(c.h, c.H, c.range);
    Verdict v;
    if (t.trend == Trend::Constant)
        v = decided(Relation::EQ, "different-PVDM", 0);
    else if (t.trend == Trend::Increasing)
        v = decided(Relation::GE, "different-PVDM", 1);
    else if (t.trend == Trend::Decreasing)
        v = decided(Relation::LE, "different-PVDM", 2);
    else
        v = undecided("different-PVDM", "|h'/H'| is not monotone");
    v.notes.push_back(trend_note("|h'/H'|", t, "I"));
    return v;
}

// |a'/b'| on both [a,b] and I.
Trend joint_trend(const GeneratorMap& a, const GeneratorMap& b, const Context& c, Verdict& v) {
    const TrendReport on_d = abs_ratio_trend(a, b, c.d);
    const TrendReport on_i = abs_ratio_trend(a, b, c.range);
    v.notes.push_back(trend_note("|g'/h'|", on_d, "[a,b]"));
    v.notes.push_back(trend_note("|g'/h'|", on_i, "I"));
    if (on_d.trend == on_i.trend)
        return on_d.trend;
    if (on_d.trend == Trend::Constant && monotone(on_i.trend))
        return on_i.trend;
    if (on_i.trend == Trend::Constant && monotone(on_d.trend))
        return on_d.trend;
    return Trend::None;
}

Verdict class_III_pair(const Context& c) {
    Verdict notes;
    const Trend t = joint_trend(c.g, c.G, c, notes);
    Verdict v;
    if (t == Trend::Constant)
        v = decided(Relation::EQ, "class-III-pair", 0);
    else if (c.f_trend != Trend::Increasing)
        v = undecided("class-III-pair", "f is not increasing, an open sub-case");
    else if (t == Trend::Increasing)
        v = decided(Relation::GT, "class-III-pair", 1);
    else if (t == Trend::Decreasing)
        v = decided(Relation::LT, "class-III-pair", 2);
    else
        v = undecided("class-III-pair", "|g'/h'| is not monotone on both [a,b] and I");
    v.notes.insert(v.notes.end(), notes.notes.begin(), notes.notes.end());
    return v;
}

Verdict exchanged(const Context& c) {
    Verdict notes;
    const Trend t = joint_trend(c.g, c.h, c, notes);
    Verdict v;
    if (t == Trend::Constant)
        v = decided(Relation::EQ, "exchanged-DM", 0);
    else if (c.f_trend != Trend::Decreasing)
        v = undecided("exchanged-DM", "f is not decreasing, an open sub-case");
    else if (t == Trend::Increasing)
        v = decided(Relation::LT, "exchanged-DM", 1);
    else if (t == Trend::Decreasing)
        v = decided(Relation::GT, "exchanged-DM", 2);
    else
        v = undecided("exchanged-DM", "|g'/h'| is not monotone on both [a,b] and I");
    v.notes.insert(v.notes.end(), notes.notes.begin(), notes.notes.end());
    return v;
}

int direction(Relation r) {
    switch (r) {
    case Relation::GE:
    case Relation::GT:
        return 1;
    case Relation::LE:
    case Relation::LT:
        return -1;
    default:
        return 0;
    }
}

bool conflicting(Relation a, Relation b) {
    if (a == Relation::Undecided || b == Relation::Undecided)
        return false;
    if (direction(a) * direction(b) < 0)
        return true;
    const bool a_strict = a == Relation::GT || a == Relation::LT;
    const bool b_strict = b == Relation::GT || b == Relation::LT;
    return (a == Relation::EQ && b_strict) || (b == Relation::EQ && a_strict);
}

} // namespace

ComparisonScenario ComparisonScenario::make(Function f, const Interval& fdomain, Frame left, Frame right) {
    if (left.dimension() != 2 || right.dimension() != 2)
        throw PreconditionError("comparing function means needs two-dimensional frames");
    ComparisonScenario s{std::move(f), fdomain, std::move(left), std::move(right), Scenario::GeneralIV};
    const GeneratorMap& g = s.left[0];
    const GeneratorMap& h = s.left[1];
    const GeneratorMap& G = s.right[0];
    const GeneratorMap& H = s.right[1];
    const Interval& d = s.fdomain;
    const Interval range = range_hull(s.f, d);
    const Interval both = span(d, range);
    if (equivalent(g, G, d) && equivalent(h, H, range))
        s.kind = Scenario::Identical;
    else if (identity_like(g, d) && identity_like(G, d))
        s.kind = Scenario::ClassI;
    else if (identity_like(h, range) && identity_like(H, range))
        s.kind = Scenario::ClassII;
    else if (equivalent(g, h, both) && equivalent(G, H, both))
        s.kind = Scenario::ClassIIIPair;
    else if (equivalent(g, H, both) && equivalent(h, G, both))
        s.kind = Scenario::Exchanged;
    else if (equivalent(g, G, d))
        s.kind = Scenario::SameIVDM;
    else if (equivalent(h, H, range))
        s.kind = Scenario::SamePVDM;
    else if (s.f.single() && s.f.expr().is_variable())
        s.kind = Scenario::ClassV;
    return s;
}

Verdict compare_function_means(const ComparisonScenario& s, const MeanOptions& opt) {
    const Interval& d = s.fdomain;
    Context c{s, s.left[0], s.left[1], s.right[0], s.right[1], d, range_hull(s.f, d)};
    Verdict v;
    if (d.degenerate() || c.range.degenerate()) {
        v = decided(Relation::EQ, "constant-function", 0);
    } else {
        c.f_trend = trend_of(classify_monotonicity(s.f, d));
        switch (s.kind) {
        case Scenario::Identical:
            v = decided(Relation::EQ, "identical-frames", 0);
            break;
        case Scenario::ClassI:
            v = class_I(c);
            break;
        case Scenario::ClassII:
            v = class_II(c);
            break;
        case Scenario::ClassIIIPair:
            v = class_III_pair(c);
            break;
        case Scenario::Exchanged:
            v = exchanged(c);
            break;
        case Scenario::SameIVDM:
            v = different_pvdm(c);
            break;
        case Scenario::SamePVDM:
            v = different_ivdm(c);
            break;
        case Scenario::ClassV:
            v = general_IV(c, "class-V");
            break;
        case Scenario::GeneralIV:
            v = general_IV(c, "general-IV");
            break;
        }
        if (s.kind != Scenario::GeneralIV && s.kind != Scenario::ClassV && s.kind != Scenario::Identical) {
            Verdict fallback = general_IV(c, "general-IV");
            if (!v.decided() && fallback.decided()) {
                fallback.notes.insert(fallback.notes.begin(), v.notes.begin(), v.notes.end());
                v = std::move(fallback);
            } else if (v.decided() && fallback.decided()) {
                if (conflicting(v.relation, fallback.relation))
                    throw ContradictionError("general-IV gives " + to_string(fallback.relation) + " against " +
                                             v.summary());
                v.corroborated_by.push_back("general-IV");
            }
        }
    }
    v.notes.insert(v.notes.begin(), "scenario " + to_string(s.kind));

    const double l = dvi_mean({s.f, d, s.left}, opt).value;
    const double r = dvi_mean({s.f, d, s.right}, opt).value;
    v.left = l;
    v.right = r;
    v.tolerance = 1e-7 * std::max({1.0, std::abs(l), std::abs(r)});
    if (!satisfies(v.relation, l, r, v.tolerance))
        throw ContradictionError(v.summary() + " contradicted by the computed means: left " + num(l) + ", right " +
                                 num(r));
    return v;
}

MeanResult first_mvt_mean(const Expr& f, const Expr& weight, const Interval& d, const MeanOptions& opt) {
    MeanResult res;
    if (d.degenerate()) {
        res.value = f(d.lo());
        res.method = MeanMethod::ClosedForm;
        res.range = Interval(res.value, res.value);
        return res;
    }
    const Interval interior(d.lo(), d.hi(), true, true);
    const RangeEstimate w = estimate_range(Function(weight), interior);
    if (!(w.inf >= 0.0) && !(w.sup <= 0.0))
        throw PreconditionError("the weight " + weight.str() + " changes sign on " + d.to_string());
    if (w.inf == 0.0 && w.sup == 0.0)
        throw PreconditionError("the weight vanishes on " + d.to_string());
    const RangeEstimate range = estimate_range(Function(f), interior);
    res.range = range.hull();
    if (range.inf == range.sup) {
        res.value = range.inf;
        res.method = MeanMethod::ClosedForm;
        return res;
    }
    const QuadResult num_q = integrate([&](double x) { return f(x) * weight(x); }, d.lo(), d.hi(), opt.quad);
    const QuadResult den_q = integrate([&](double x) { return weight(x); }, d.lo(), d.hi(), opt.quad);
    if (!num_q.converged || !den_q.converged)
        throw DivergenceError("the weighted integrals do not converge on " + d.to_string());
    res.numerator = num_q.value;
    res.denominator = den_q.value;
    res.phi_mean = num_q.value / den_q.value;
    res.value = std::clamp(res.phi_mean, range.inf, range.sup);
    res.abs_error = (num_q.error + std::abs(res.phi_mean) * den_q.error) / std::abs(den_q.value);
    res.evaluations = num_q.evaluations + den_q.evaluations;
    res.method = MeanMethod::Quadrature;
    res.note = "class II with the antiderivative of the weight as mapping";
    return res;
}

} // namespace isomean
