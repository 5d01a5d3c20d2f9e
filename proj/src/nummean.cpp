#include "isomean/nummean.hpp"

#include "isomean/criteria.hpp"
#include "isomean/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace isomean {

WeightedTuple WeightedTuple::uniform(std::vector<double> xs) {
    WeightedTuple t;
    const double p = xs.empty() ? 0.0 : 1.0 / static_cast<double>(xs.size());
    t.ps.assign(xs.size(), p);
    t.xs = std::move(xs);
    return t;
}

void WeightedTuple::validate() const {
    if (xs.size() < 2)
        throw PreconditionError("a tuple needs at least two numbers");
    if (xs.size() != ps.size())
        throw PreconditionError("numbers and weights differ in length");
    double sum = 0.0;
    for (double p : ps) {
        if (!(p > 0.0) || !std::isfinite(p))
            throw PreconditionError("weights must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12 * static_cast<double>(ps.size()))
        throw PreconditionError("weights must add up to 1");
    for (double x : xs)
        if (!std::isfinite(x))
            throw PreconditionError("numbers must be finite");
}

double iso_weighted_mean(const WeightedTuple& t, const GeneratorMap& g) {
    t.validate();
    for (double x : t.xs)
        if (!g.domain().contains(x))
            throw PreconditionError("x = " + std::to_string(x) + " is outside the domain " + g.domain().to_string());
    const auto [lo, hi] = std::minmax_element(t.xs.begin(), t.xs.end());
    if (*lo == *hi)
        return *lo;
    // Neumaier summation.
    double s = 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < t.xs.size(); ++i) {
        const double term = t.ps[i] * g(t.xs[i]);
        const double next = s + term;
        c += std::abs(s) >= std::abs(term) ? (s - next) + term : (term - next) + s;
        s = next;
    }
    const double x = g.inverse(s + c);
    return std::clamp(x, *lo, *hi);
}

double iso_mean(const std::vector<double>& xs, const GeneratorMap& g) {
    return iso_weighted_mean(WeightedTuple::uniform(xs), g);
}

namespace {

Relation jensen_relation(bool g_increasing, const Convexity& c) {
    if (c.cls == ConvexityClass::Affine)
        return Relation::EQ;
    if (c.convex())
        return g_increasing ? Relation::GE : Relation::LE;
    if (c.concave())
        return g_increasing ? Relation::LE : Relation::GE;
    return Relation::Undecided;
}

int jensen_case(bool g_increasing, const Convexity& c) {
    if (g_increasing)
        return c.convex() ? 1 : 2;
    return c.convex() ? 3 : 4;
}

void numeric_check(Verdict& v, const GeneratorMap& g, const GeneratorMap& h, const Interval& d) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ut(-0.98, 0.98);
    std::uniform_real_distribution<double> uw(0.05, 1.0);
    std::uniform_int_distribution<int> un(2, 4);
    int checked = 0;
    for (int trial = 0; trial < 64; ++trial) {
        WeightedTuple t;
        const int n = un(rng);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            t.xs.push_back(map_unit_to_interval(d, ut(rng)));
            t.ps.push_back(uw(rng));
            total += t.ps.back();
        }
        for (double& p : t.ps)
            p /= total;
        double l = 0.0;
        double r = 0.0;
        try {
            l = iso_weighted_mean(t, g);
            r = iso_weighted_mean(t, h);
        } catch (const Error&) {
            continue;
        }
        ++checked;
        const double tol = 1e-9 * std::max({1.0, std::abs(l), std::abs(r)});
        if (!satisfies(v.relation, l, r, tol)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << v.summary() << " contradicted by a tuple: g-mean " << l << ", h-mean " << r;
            throw ContradictionError(msg.str());
        }
    }
    v.notes.push_back("numeric check on " + std::to_string(checked) + " random tuples");
}

} // namespace

Verdict compare_number_means(const GeneratorMap& g, const GeneratorMap& h, const Interval& d) {
    if (!g.domain().contains(d) || !h.domain().contains(d))
        throw PreconditionError(d.to_string() + " is not inside the domains of both mappings");
    Verdict v;
    v.resolution = kSampleCount;
    if (d.degenerate()) {
        v.relation = Relation::EQ;
        v.criterion = "degenerate-interval";
        return v;
    }
    const GeneratorMap gd = g.restricted(d);
    const GeneratorMap hd = h.restricted(d);

    const TrendReport ratio = abs_ratio_trend(gd, hd, d);
    v.notes.push_back("|g'/h'| = " + ratio.expr + " is " + to_string(ratio.trend));
    switch (ratio.trend) {
    case Trend::Increasing:
        v.relation = Relation::GE;
        v.case_number = 1;
        break;
    case Trend::Decreasing:
        v.relation = Relation::LE;
        v.case_number = 2;
        break;
    case Trend::Constant:
        v.relation = Relation::EQ;
        break;
    case Trend::None:
        break;
    }
    if (v.decided()) {
        v.criterion = "number-ratio";
        v.strict_when_distinct = v.relation != Relation::EQ;
    } else {
        const Convexity c = composite_convexity(gd, hd, d);
        v.notes.push_back("g(h^-1) on h(d) is " + to_string(c.cls));
        v.relation = jensen_relation(gd.increasing(), c);
        if (v.decided()) {
            v.criterion = "number-jensen";
            if (v.relation != Relation::EQ)
                v.case_number = jensen_case(gd.increasing(), c);
            v.strict_when_distinct = c.strict();
        }
    }

    if (ratio.trend == Trend::Increasing || ratio.trend == Trend::Decreasing) {
        const TrendReport q = ratio_trend(hd, gd, d);
        if (q.trend == Trend::Increasing || q.trend == Trend::Decreasing) {
            const int increasing = (q.trend == Trend::Increasing) + hd.increasing() + gd.increasing();
            const Relation odd = increasing % 2 == 1 ? Relation::LE : Relation::GE;
            if (odd != v.relation)
                throw ContradictionError("odd-count rule gives " + to_string(odd) + " against " + v.summary());
            v.corroborated_by.push_back("odd-count");
        }
    }

    if (v.decided())
        numeric_check(v, gd, hd, d);
    else
        v.notes.push_back("no criterion applies");
    return v;
}

} // namespace isomean
