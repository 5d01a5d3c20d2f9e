#include "isomean/classify.hpp"

#include "isomean/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isomean {

std::string to_string(MonotonicityClass c) {
    switch (c) {
    case MonotonicityClass::StrictlyIncreasing:
        return "StrictlyIncreasing";
    case MonotonicityClass::StrictlyDecreasing:
        return "StrictlyDecreasing";
    case MonotonicityClass::Constant:
        return "Constant";
    case MonotonicityClass::NonMonotone:
        return "NonMonotone";
    case MonotonicityClass::Unknown:
        return "Unknown";
    }
    return "Unknown";
}

std::string to_string(ConvexityClass c) {
    switch (c) {
    case ConvexityClass::Convex:
        return "Convex";
    case ConvexityClass::Concave:
        return "Concave";
    case ConvexityClass::StrictlyConvex:
        return "StrictlyConvex";
    case ConvexityClass::StrictlyConcave:
        return "StrictlyConcave";
    case ConvexityClass::Affine:
        return "Affine";
    case ConvexityClass::Mixed:
        return "Mixed";
    case ConvexityClass::Unknown:
        return "Unknown";
    }
    return "Unknown";
}

std::vector<double> sample_points(const Interval& d, int n) {
    if (d.degenerate())
        throw PreconditionError("cannot classify on a degenerate interval " + d.to_string());
    if (n < 3)
        throw PreconditionError("sample grid needs at least 3 points");
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double t = -std::cos(std::numbers::pi * j / (n - 1));
        if (j == 0)
            t = -1.0;
        if (j == n - 1)
            t = 1.0;
        if (2 * j == n - 1)
            t = 0.0;
        double x;
        if (t == -1.0)
            x = d.lo();
        else if (t == 1.0)
            x = d.hi();
        else
            x = map_unit_to_interval(d, t);
        if (std::isfinite(x) && (xs.empty() || x > xs.back()))
            xs.push_back(x);
    }
    return xs;
}

namespace {

struct Sample {
    double x = 0.0;
    double v = 0.0;
    double d = 0.0; // derivative of the order being classified
    bool has_v = false;
    bool has_d = false;
    bool flat = false;
    bool overflow = false; // value or derivative too large to represent
    int sign = 0;
};

// Evaluates e and its derivative of interest on the grid. Samples whose value
// or derivative cannot be evaluated are kept with has_v/has_d cleared.
std::vector<Sample> evaluate_grid(const Expr& e, const Expr& de, const std::vector<double>& xs) {
    std::vector<Sample> out(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        Sample& s = out[j];
        s.x = xs[j];
        try {
            s.v = e(s.x);
            s.has_v = true;
        } catch (const DomainError& err) {
            s.overflow = s.overflow || err.kind() == DomainError::Kind::Overflow;
        }
        try {
            s.d = de(s.x);
            s.has_d = true;
        } catch (const DomainError& err) {
            s.overflow = s.overflow || err.kind() == DomainError::Kind::Overflow;
        }
    }
    return out;
}

double cell_width(const std::vector<Sample>& s, std::size_t j) {
    const double left = s[j == 0 ? 0 : j - 1].x;
    const double right = s[std::min(j + 1, s.size() - 1)].x;
    return 0.5 * (right - left);
}

// Marks flat samples: the change predicted over one cell is below relative
// rounding of the sample value.
void mark_flat(std::vector<Sample>& s, int order) {
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!s[j].has_d)
            continue;
        double cell = cell_width(s, j);
        if (order == 2)
            cell *= cell;
        s[j].flat = std::abs(s[j].d) * cell <= 1e-12 * (s[j].has_v ? std::abs(s[j].v) : 0.0);
        s[j].sign = s[j].flat ? 0 : (s[j].d > 0.0 ? 1 : -1);
    }
}

bool is_end(const std::vector<Sample>& s, std::size_t j) {
    return j == 0 || j + 1 == s.size();
}

struct FlatRuns {
    bool interior_run = false; // run of >= 2 flat samples not touching an end
    bool end_run = false;      // flat samples touching an end
    bool interior_single = false;
};

FlatRuns flat_runs(const std::vector<Sample>& s) {
    FlatRuns r;
    // Indices of usable samples only; failed ones are transparent.
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j].has_d)
            idx.push_back(j);
    std::size_t i = 0;
    while (i < idx.size()) {
        if (!s[idx[i]].flat) {
            ++i;
            continue;
        }
        std::size_t k = i;
        while (k + 1 < idx.size() && s[idx[k + 1]].flat)
            ++k;
        const bool touches = i == 0 || k + 1 == idx.size();
        if (touches)
            r.end_run = true;
        else if (k > i)
            r.interior_run = true;
        else
            r.interior_single = true;
        i = k + 1;
    }
    return r;
}

Monotonicity non_monotone(double x1, double x2, int n, std::string note) {
    Monotonicity m;
    m.cls = MonotonicityClass::NonMonotone;
    m.witness = std::make_pair(std::min(x1, x2), std::max(x1, x2));
    m.resolution = n;
    m.note = std::move(note);
    return m;
}

} // namespace

Monotonicity classify_monotonicity(const Expr& e, const Interval& d) {
    return classify_monotonicity(e, differentiate(e), d);
}

Monotonicity classify_monotonicity(const Expr& e, const Expr& de, const Interval& d) {
    const auto xs = sample_points(d);
    const int n = static_cast<int>(xs.size());
    Monotonicity result;
    result.resolution = n;
    if (!e.depends_on_variable()) {
        result.cls = MonotonicityClass::Constant;
        return result;
    }
    auto s = evaluate_grid(e, de, xs);
    mark_flat(s, 1);

    bool interior_failure = false;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (!is_end(s, j) && !s[j].overflow && (!s[j].has_v || !s[j].has_d))
            interior_failure = true;

    // Slope sign reversal between consecutive non-flat samples.
    int dir = 0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!s[j].has_d || s[j].sign == 0)
            continue;
        if (dir != 0 && s[j].sign != dir)
            return non_monotone(s[last].x, s[j].x, n, "slope changes sign");
        dir = s[j].sign;
        last = j;
    }

    if (dir == 0) {
        if (interior_failure) {
            result.note = "expression not evaluable on the sample grid";
            return result;
        }
        result.cls = MonotonicityClass::Constant;
        return result;
    }

    // Refine around isolated flat samples, where a reversal could hide.
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
        if (!s[j].flat)
            continue;
        const double lo = s[j - 1].x;
        const double hi = s[j + 1].x;
        for (int k = 1; k < 32; ++k) {
            const double x = lo + (hi - lo) * k / 32.0;
            try {
                const double dv = de(x);
                const double v = e(x);
                const double cell = (hi - lo) / 32.0;
                if (std::abs(dv) * cell > 1e-12 * std::abs(v) && (dv > 0.0 ? 1 : -1) != dir)
                    return non_monotone(x, s[last].x, n, "slope changes sign near a stationary point");
            } catch (const DomainError&) {
            }
        }
    }

    // Values must move with the slope.
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        if (!s[j].has_v || !s[j + 1].has_v)
            continue;
        const double step = s[j + 1].v - s[j].v;
        const double tol = 1e-12 * std::max(std::abs(s[j].v), std::abs(s[j + 1].v));
        if (step * dir < -tol)
            return non_monotone(s[j].x, s[j + 1].x, n, "values move against the slope");
    }

    if (interior_failure) {
        result.note = "expression not evaluable at interior sample points";
        return result;
    }
    const FlatRuns runs = flat_runs(s);
    if (runs.interior_run) {
        result.note = "derivative vanishes on a run of interior samples";
        return result;
    }
    result.cls = dir > 0 ? MonotonicityClass::StrictlyIncreasing : MonotonicityClass::StrictlyDecreasing;
    return result;
}

Monotonicity classify_monotonicity(const Function& f, const Interval& d) {
    if (f.single())
        return classify_monotonicity(f.expr(), d);
    const auto inner = f.breaks_within(d.lo(), d.hi());
    std::vector<double> cuts;
    cuts.push_back(d.lo());
    cuts.insert(cuts.end(), inner.begin(), inner.end());
    cuts.push_back(d.hi());
    int dir = 0;
    bool constant = true;
    Monotonicity out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Interval piece_dom(cuts[i], cuts[i + 1], i == 0 && d.lo_open(), i + 2 == cuts.size() && d.hi_open());
        const Expr& piece = f.pieces()[f.piece_index(cuts[i + 1])];
        Monotonicity m = classify_monotonicity(piece, piece_dom);
        out.resolution += m.resolution;
        if (m.cls == MonotonicityClass::NonMonotone || m.cls == MonotonicityClass::Unknown)
            return m;
        if (m.cls == MonotonicityClass::Constant)
            continue;
        constant = false;
        const int s = m.increasing() ? 1 : -1;
        if (dir != 0 && s != dir)
            return non_monotone(cuts[i], cuts[i + 1], out.resolution, "pieces move in opposite directions");
        dir = s;
    }
    // Jumps at breakpoints must follow the same direction.
    for (double b : inner) {
        const std::size_t k = f.piece_index(b);
        try {
            const double left = f.pieces()[k](b);
            const double right = f.pieces()[k + 1](b);
            if (right == left)
                continue;
            const int s = right > left ? 1 : -1;
            if (dir == 0 && constant) {
                dir = s;
                constant = false;
            } else if (s != dir) {
                return non_monotone(b, b, out.resolution, "jump against the direction of the pieces");
            }
        } catch (const DomainError&) {
            out.note = "piece not evaluable at a breakpoint";
            return out;
        }
    }
    if (constant) {
        out.cls = MonotonicityClass::Constant;
        return out;
    }
    // Constant pieces between moving ones make f non-strict.
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Expr& piece = f.pieces()[f.piece_index(cuts[i + 1])];
        if (!piece.depends_on_variable()) {
            out.note = "constant piece: monotone but not strictly";
            return out;
        }
    }
    out.cls = dir > 0 ? MonotonicityClass::StrictlyIncreasing : MonotonicityClass::StrictlyDecreasing;
    return out;
}

Convexity classify_convexity(const Expr& e, const Interval& d) {
    return classify_convexity(e, differentiate(differentiate(e)), d);
}

Convexity classify_convexity(const Expr& e, const Expr& d2e, const Interval& d) {
    const auto xs = sample_points(d);
    const int n = static_cast<int>(xs.size());
    Convexity result;
    result.resolution = n;
    auto s = evaluate_grid(e, d2e, xs);

    // Second differences stand in where the symbolic second derivative fails
    // (kinks such as abs at 0).
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
        if (s[j].has_d || !s[j - 1].has_v || !s[j].has_v || !s[j + 1].has_v)
            continue;
        const double h1 = s[j].x - s[j - 1].x;
        const double h2 = s[j + 1].x - s[j].x;
        s[j].d = 2.0 * ((s[j + 1].v - s[j].v) / h2 - (s[j].v - s[j - 1].v) / h1) / (h1 + h2);
        s[j].has_d = std::isfinite(s[j].d);
    }
    mark_flat(s, 2);

    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!is_end(s, j) && !s[j].overflow && (!s[j].has_v || !s[j].has_d)) {
            result.note = "expression not evaluable at interior sample points";
            return result;
        }
    }

    int dir = 0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!s[j].has_d || s[j].sign == 0)
            continue;
        if (dir != 0 && s[j].sign != dir) {
            auto cell = [&](std::size_t k) {
                return Interval(s[k == 0 ? 0 : k - 1].x, s[std::min(k + 1, s.size() - 1)].x);
            };
            result.cls = ConvexityClass::Mixed;
            result.witness = std::make_pair(cell(last), cell(j));
            result.note = "second derivative changes sign";
            return result;
        }
        dir = s[j].sign;
        last = j;
    }
    if (dir == 0) {
        result.cls = ConvexityClass::Affine;
        return result;
    }
    const FlatRuns runs = flat_runs(s);
    const bool strict = !runs.interior_run && !runs.end_run;
    if (dir > 0)
        result.cls = strict ? ConvexityClass::StrictlyConvex : ConvexityClass::Convex;
    else
        result.cls = strict ? ConvexityClass::StrictlyConcave : ConvexityClass::Concave;
    if (!strict)
        result.note = "second derivative vanishes on part of the grid";
    return result;
}

double endpoint_limit(const Expr& e, const Interval& d, Side side) {
    const bool lower = side == Side::Lower;
    const double end = lower ? d.lo() : d.hi();
    const double other = lower ? d.hi() : d.lo();
    const bool open = lower ? d.lo_open() : d.hi_open();
    if (!e.depends_on_variable())
        return e(0.0);

    std::optional<double> direct;
    if (std::isfinite(end)) {
        try {
            direct = e(end);
        } catch (const DomainError&) {
        }
        if (direct && !open)
            return *direct;
    }

    const double inward = lower ? 1.0 : -1.0;
    std::vector<double> vals;
    int overflow_sign = 0;
    const int kmin = std::isfinite(end) ? 2 : 1;
    const int kmax = std::isfinite(end) ? 12 : 15;
    for (int k = kmin; k <= kmax; ++k) {
        double x;
        if (std::isfinite(end)) {
            const double span = std::isfinite(other) ? other - end : inward * std::max(1.0, std::abs(end));
            x = end + std::pow(10.0, -k) * span;
        } else {
            const double base = std::isfinite(other) ? std::max(1.0, std::abs(other)) : 1.0;
            x = -inward * std::pow(10.0, k) * base;
            if (std::isfinite(other) && (lower ? x >= other : x <= other))
                continue;
        }
        try {
            vals.push_back(e(x));
        } catch (const DomainError& err) {
            if (err.kind() == DomainError::Kind::Overflow || err.kind() == DomainError::Kind::Pole) {
                if (!vals.empty())
                    overflow_sign = vals.back() >= 0.0 ? 1 : -1;
                break;
            }
            if (!vals.empty())
                break;
        }
    }
    const auto trend_sign = [&]() {
        const std::size_t m = vals.size();
        if (m >= 2 && vals[m - 1] != vals[m - 2])
            return vals[m - 1] > vals[m - 2] ? 1 : -1;
        return m >= 1 && vals.back() < 0.0 ? -1 : 1;
    };
    if (overflow_sign != 0)
        return trend_sign() > 0 ? kInf : -kInf;
    if (vals.size() < 3) {
        if (direct)
            return *direct;
        throw DomainError(DomainError::Kind::OutOfDomain, "cannot determine the limit of " + e.str() + " at " +
                                                              std::to_string(end));
    }
    const std::size_t m = vals.size();
    const double d1 = vals[m - 1] - vals[m - 2];
    const double d0 = vals[m - 2] - vals[m - 3];
    const bool converging = d1 == 0.0 || (d0 != 0.0 && std::abs(d1) < 0.9 * std::abs(d0));
    if (converging) {
        double est = vals.back();
        if (d1 != 0.0) {
            const double r = d1 / d0;
            est += d1 * r / (1.0 - r);
        }
        if (direct && std::abs(*direct - est) <= 10.0 * std::abs(d1) + 1e-12 * std::max(1.0, std::abs(est)))
            return *direct;
        return est;
    }
    if (direct && std::abs(*direct) < 1e15)
        return *direct;
    return trend_sign() > 0 ? kInf : -kInf;
}

Interval RangeEstimate::hull() const {
    return Interval(inf, sup, !inf_attained || std::isinf(inf), !sup_attained || std::isinf(sup));
}

RangeEstimate estimate_range(const Function& f, const Interval& d) {
    if (d.degenerate()) {
        const double v = f(d.lo());
        return {v, v, true, true};
    }
    const auto inner = f.breaks_within(d.lo(), d.hi());
    std::vector<double> cuts;
    cuts.push_back(d.lo());
    cuts.insert(cuts.end(), inner.begin(), inner.end());
    cuts.push_back(d.hi());

    double in_min = kInf, in_max = -kInf;   // values at points of d
    double lim_min = kInf, lim_max = -kInf; // limits not attained
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const bool first = i == 0;
        const bool last = i + 2 == cuts.size();
        const bool lo_open = first ? d.lo_open() : true;
        const bool hi_open = last ? d.hi_open() : false;
        const Interval sub(cuts[i], cuts[i + 1], lo_open, hi_open);
        const Expr& piece = f.pieces()[f.piece_index(sub.midpoint())];
        bool lo_limit = lo_open;
        bool hi_limit = hi_open;
        for (double x : sample_points(sub)) {
            if ((x == sub.lo() && lo_open) || (x == sub.hi() && hi_open))
                continue;
            try {
                const double v = piece(x);
                in_min = std::min(in_min, v);
                in_max = std::max(in_max, v);
            } catch (const DomainError&) {
                if (x == sub.lo())
                    lo_limit = true;
                else if (x == sub.hi())
                    hi_limit = true;
                else
                    throw;
            }
        }
        const auto add_limit = [&](Side side) {
            const double v = endpoint_limit(piece, Interval(sub.lo(), sub.hi(), true, true), side);
            lim_min = std::min(lim_min, v);
            lim_max = std::max(lim_max, v);
        };
        if (lo_limit)
            add_limit(Side::Lower);
        if (hi_limit)
            add_limit(Side::Upper);
    }
    RangeEstimate r;
    r.inf = std::min(in_min, lim_min);
    r.sup = std::max(in_max, lim_max);
    r.inf_attained = in_min <= lim_min;
    r.sup_attained = in_max >= lim_max;
    if (!std::isfinite(in_min) && !std::isfinite(lim_min))
        throw DomainError(DomainError::Kind::OutOfDomain, "function not evaluable on " + d.to_string());
    return r;
}

} // namespace isomean
