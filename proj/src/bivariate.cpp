#include "isomean/bivariate.hpp"

#include "isomean/error.hpp"
#include "isomean/funmean.hpp"
#include "isomean/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace isomean {

std::string to_string(StolarskyBranch b) {
    switch (b) {
    case StolarskyBranch::Degenerate:
        return "a=b";
    case StolarskyBranch::Generic:
        return "generic";
    case StolarskyBranch::PowerMean:
        return "p=q";
    case StolarskyBranch::Geometric:
        return "p=q=0";
    case StolarskyBranch::OppositeOrders:
        return "p+q=0";
    case StolarskyBranch::ZeroP:
        return "p=0";
    case StolarskyBranch::ZeroQ:
        break;
    }
    return "q=0";
}

namespace {

constexpr double kBranchEps = 1e-9;

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

} // namespace

StolarskyBranch stolarsky_branch(double p, double q) noexcept {
    const bool p0 = std::abs(p) < kBranchEps;
    const bool q0 = std::abs(q) < kBranchEps;
    if (p0 && q0)
        return StolarskyBranch::Geometric;
    if (p0)
        return StolarskyBranch::ZeroP;
    if (q0)
        return StolarskyBranch::ZeroQ;
    if (std::abs(p + q) < kBranchEps)
        return StolarskyBranch::OppositeOrders;
    if (std::abs(p - q) < kBranchEps)
        return StolarskyBranch::PowerMean;
    return StolarskyBranch::Generic;
}

double quasi_stolarsky(const QuasiStolarskyParams& s) {
    if (!(s.a > 0.0) || !(s.b > 0.0) || !std::isfinite(s.a) || !std::isfinite(s.b))
        throw PreconditionError("quasi-Stolarsky means need positive a and b");
    if (s.a == s.b)
        return s.a;
    const double a = std::min(s.a, s.b);
    const double b = std::max(s.a, s.b);
    const double lr = std::log(b / a);
    const double p = s.p;
    const double q = s.q;
    // b^t - a^t over t, stable for small t.
    const auto diff_over = [&](double t) { return std::pow(a, t) * std::expm1(t * lr) / t; };
    double v = 0.0;
    switch (stolarsky_branch(p, q)) {
    case StolarskyBranch::Geometric:
        v = std::sqrt(a * b);
        break;
    case StolarskyBranch::ZeroP:
        v = std::pow(diff_over(q) / lr, 1.0 / q);
        break;
    case StolarskyBranch::ZeroQ: {
        const double ap = std::pow(a, p);
        const double bp = std::pow(b, p);
        v = std::exp((bp * std::log(b) - ap * std::log(a)) / (bp - ap) - 1.0 / p);
        break;
    }
    case StolarskyBranch::OppositeOrders:
        v = std::pow(diff_over(p) / lr, 1.0 / p);
        break;
    case StolarskyBranch::PowerMean:
        v = std::pow(0.5 * (std::pow(a, p) + std::pow(b, p)), 1.0 / p);
        break;
    default:
        if (std::abs((p + q) * lr) >= 0.5 && std::abs(p * lr) >= 0.5) {
            const double num = p * (std::pow(b, p + q) - std::pow(a, p + q));
            v = std::pow(num / ((p + q) * (std::pow(b, p) - std::pow(a, p))), 1.0 / q);
        } else {
            v = std::pow(diff_over(p + q) / diff_over(p), 1.0 / q);
        }
        break;
    }
    return std::clamp(v, a, b);
}

double classV_bivariate(const GeneratorMap& g, const GeneratorMap& h, double a, double b) {
    if (a == b)
        return a;
    return class_V_mean(Interval(std::min(a, b), std::max(a, b)), g, h).value;
}

double cauchy_mean_value(const Expr& f, const Expr& g, double a, double b) {
    if (a == b)
        return a;
    const Interval d(std::min(a, b), std::max(a, b));
    const Expr dg = differentiate(g);
    for (double x : sample_points(d, kSampleCount)) {
        double v = 0.0;
        try {
            v = dg(x);
        } catch (const DomainError&) {
            throw PreconditionError("g' cannot be evaluated at x = " + num(x));
        }
        if (v == 0.0 || !std::isfinite(v))
            throw PreconditionError("g' vanishes at x = " + num(x));
    }
    const Expr ratio = differentiate(f) / dg;
    std::optional<GeneratorMap> h;
    try {
        h.emplace(ratio, d);
    } catch (const NotMonotoneError& e) {
        throw PreconditionError("f'/g' = " + ratio.str() + " is not invertible on " + d.to_string() +
                                ", so the Cauchy mean value does not exist (" + e.what() + ")");
    }
    const double target = (f(d.hi()) - f(d.lo())) / (g(d.hi()) - g(d.lo()));
    const Interval& img = h->image();
    return h->inverse(std::clamp(target, img.lo(), img.hi()));
}

CauchyToClassV cauchy_to_classV(const Expr& f, const GeneratorMap& g, const Interval& d) {
    const double c = cauchy_mean_value(f, g.expr(), d.lo(), d.hi());
    const GeneratorMap h(differentiate(f) / g.derivative(), d);
    const double v = classV_bivariate(g, h, d.lo(), d.hi());
    return {h, c, v, std::abs(c - v)};
}

Antiderivative::Antiderivative(Expr integrand, const Interval& domain, double tolerance)
    : integrand_(std::move(integrand)) {
    if (!domain.finite() || domain.degenerate())
        throw PreconditionError("an antiderivative needs a finite non-degenerate interval");
    const QuadOptions q{1e-14, 1e-13, 0};
    const auto piece = [&](double lo, double hi) { return integrate(integrand_, lo, hi, q).value; };
    const auto slope = [&](double x) {
        const double v = integrand_(x);
        if (!std::isfinite(v))
            throw PreconditionError("the integrand is not finite at x = " + num(x));
        return v;
    };

    const int initial = 16;
    std::vector<double> xs;
    for (int i = 0; i <= initial; ++i)
        xs.push_back(i == initial ? domain.hi() : domain.lo() + domain.width() * i / initial);
    std::vector<double> ys{0.0};
    for (int i = 0; i < initial; ++i)
        ys.push_back(ys.back() + piece(xs[i], xs[i + 1]));
    std::vector<double> ms;
    for (double x : xs)
        ms.push_back(slope(x));
    double scale = 1.0;
    for (double y : ys)
        scale = std::max(scale, std::abs(y));

    const std::size_t cap = 1u << 15;
    std::size_t count = xs.size();
    bool refined = true;
    while (refined) {
        refined = false;
        std::vector<double> nx{xs.front()};
        std::vector<double> ny{ys.front()};
        std::vector<double> nm{ms.front()};
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const double x0 = xs[i];
            const double x1 = xs[i + 1];
            const double mid = 0.5 * (x0 + x1);
            const double hw = x1 - x0;
            const double interp = 0.5 * (ys[i] + ys[i + 1]) + hw * (ms[i] - ms[i + 1]) / 8.0;
            const double exact = ys[i] + piece(x0, mid);
            const double err = std::abs(interp - exact) / scale;
            if (err > tolerance && count < cap) {
                ++count;
                nx.push_back(mid);
                ny.push_back(exact);
                nm.push_back(slope(mid));
                refined = true;
            } else {
                build_error_ = std::max(build_error_, err);
            }
            nx.push_back(x1);
            ny.push_back(ys[i + 1]);
            nm.push_back(ms[i + 1]);
        }
        xs = std::move(nx);
        ys = std::move(ny);
        ms = std::move(nm);
    }
    nodes_ = std::move(xs);
    values_ = std::move(ys);
    slopes_ = std::move(ms);
}

double Antiderivative::operator()(double x) const {
    if (x < nodes_.front() || x > nodes_.back())
        throw DomainError(DomainError::Kind::OutOfDomain,
                          "x = " + num(x) + " is outside the antiderivative's interval");
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
    if (i + 1 >= nodes_.size())
        return values_.back();
    const double h = nodes_[i + 1] - nodes_[i];
    const double t = (x - nodes_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] + (-2 * t3 + 3 * t2) * values_[i + 1] +
           (t3 - t2) * h * slopes_[i + 1];
}

ClassVToCauchy classV_to_cauchy(const GeneratorMap& g, const GeneratorMap& h, const Expr& f, const Interval& d) {
    if (!d.finite() || d.degenerate())
        throw PreconditionError("the conversion needs a finite non-degenerate interval");
    const GeneratorMap fm(f, d);
    const Expr gamma = compose(h.expr(), f);
    const GeneratorMap gm(gamma, d);
    Antiderivative l(gamma * g.derivative(), d);
    const double mean = dvi_mean({Function(f), d, Frame({g, h})}).value;
    const double pre = fm.inverse(std::clamp(mean, fm.image().lo(), fm.image().hi()));
    const double target = (l(d.hi()) - l(d.lo())) / (g(d.hi()) - g(d.lo()));
    const double cauchy = gm.inverse(std::clamp(target, gm.image().lo(), gm.image().hi()));
    return {std::move(l), mean, pre, cauchy, std::abs(pre - cauchy)};
}

namespace {

bool f_increasing(const Expr& f, const Interval& d) {
    const Monotonicity m = classify_monotonicity(f, d);
    if (m.cls == MonotonicityClass::StrictlyIncreasing)
        return true;
    if (m.cls == MonotonicityClass::StrictlyDecreasing)
        return false;
    throw PreconditionError("f must be strictly monotone on " + d.to_string());
}

struct SideExprs {
    Expr gamma;
    Expr d1;
    Expr d2;
    Expr dg;
    Expr d2g;

    SideExprs(const Expr& f, const GeneratorMap& g, const GeneratorMap& h)
        : gamma(compose(h.expr(), f)), d1(differentiate(gamma)), d2(differentiate(d1)), dg(g.derivative()),
          d2g(differentiate(dg)) {}
};

double nonzero(const Expr& e, double x, const char* what) {
    double v = 0.0;
    try {
        v = e(x);
    } catch (const DomainError&) {
        throw PreconditionError(std::string(what) + " cannot be evaluated at x = " + num(x));
    }
    if (v == 0.0 || !std::isfinite(v))
        throw PreconditionError(std::string(what) + " vanishes at x = " + num(x));
    return v;
}

bool same_frames(const GeneratorMap& g, const GeneratorMap& h, const GeneratorMap& G, const GeneratorMap& H) {
    return g.str() == G.str() && h.str() == H.str();
}

void finish(ConditionReport& r, const std::string& criterion, bool identical) {
    Verdict& v = r.verdict;
    v.criterion = criterion;
    v.resolution = r.samples;
    if (identical) {
        v.relation = Relation::EQ;
        v.notes.push_back("identical frames");
    }
}

} // namespace

ConditionReport losonczi_necessary(const Expr& f, const GeneratorMap& g, const GeneratorMap& h, const GeneratorMap& G,
                                   const GeneratorMap& H, const Interval& d) {
    if (!d.finite() || d.degenerate())
        throw PreconditionError("the condition needs a finite non-degenerate interval");
    const bool inc = f_increasing(f, d);
    const SideExprs L(f, g, h);
    const SideExprs R(f, G, H);
    ConditionReport r;
    r.holds = r.strict = r.reverse_holds = true;
    bool reverse_strict = true;
    r.worst_margin = kInf;
    for (double x : sample_points(d, kSampleCount)) {
        const double lhs = L.d2(x) / nonzero(L.d1, x, "gamma'") + 2.0 * L.d2g(x) / nonzero(L.dg, x, "g'");
        const double rhs = R.d2(x) / nonzero(R.d1, x, "Gamma'") + 2.0 * R.d2g(x) / nonzero(R.dg, x, "G'");
        const double margin = inc ? rhs - lhs : lhs - rhs;
        const double tol = 1e-10 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        r.holds = r.holds && margin >= -tol;
        r.strict = r.strict && margin > tol;
        r.reverse_holds = r.reverse_holds && margin <= tol;
        reverse_strict = reverse_strict && margin < -tol;
        r.worst_margin = std::min(r.worst_margin, margin);
        ++r.samples;
    }
    const double scale = std::max(std::abs(d.lo()), std::abs(d.hi()));
    r.near_enough = d.width() <= 1e-2 * scale;
    const bool identical = same_frames(g, h, G, H);
    finish(r, "losonczi-necessary", identical);
    Verdict& v = r.verdict;
    v.notes.push_back(std::string("f is ") + (inc ? "increasing" : "decreasing"));
    v.notes.push_back(std::string("necessary condition ") + (r.holds ? "holds" : "fails") +
                      (r.strict ? " strictly" : "") + " on the sample grid");
    if (!identical) {
        if (r.near_enough && r.strict)
            v.relation = Relation::LE;
        else if (r.near_enough && reverse_strict)
            v.relation = Relation::GE;
        if (!r.near_enough)
            v.notes.push_back("assumes a, b near enough; the interval is too wide for a prediction");
    }
    return r;
}

ConditionReport losonczi_sufficient(const Expr& f, const GeneratorMap& g, const GeneratorMap& h, const GeneratorMap& G,
                                    const GeneratorMap& H, const Interval& d) {
    if (!d.finite() || d.degenerate())
        throw PreconditionError("the condition needs a finite non-degenerate interval");
    const bool inc = f_increasing(f, d);
    const SideExprs L(f, g, h);
    const SideExprs R(f, G, H);
    struct Point {
        double x, gl, dl, gdl, gr, dr, gdr;
    };
    const auto at = [&](double x) {
        return Point{x,
                     L.gamma(x),
                     nonzero(L.d1, x, "gamma'"),
                     nonzero(L.dg, x, "g'"),
                     R.gamma(x),
                     nonzero(R.d1, x, "Gamma'"),
                     nonzero(R.dg, x, "G'")};
    };
    ConditionReport r;
    r.holds = r.strict = r.reverse_holds = true;
    bool reverse_strict = true;
    r.worst_margin = kInf;
    const auto check = [&](const Point& u, const Point& v) {
        if (u.x == v.x)
            return;
        const double lhs = (u.gl - v.gl) / v.dl * (u.gdl / v.gdl);
        const double rhs = (u.gr - v.gr) / v.dr * (u.gdr / v.gdr);
        const double margin = inc ? rhs - lhs : lhs - rhs;
        const double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        r.holds = r.holds && margin >= -tol;
        r.strict = r.strict && margin > tol;
        r.reverse_holds = r.reverse_holds && margin <= tol;
        reverse_strict = reverse_strict && margin < -tol;
        r.worst_margin = std::min(r.worst_margin, margin);
        ++r.samples;
    };
    const int n = 64;
    std::vector<Point> grid;
    for (int i = 0; i < n; ++i)
        grid.push_back(at(d.lo() + d.width() * i / (n - 1)));
    for (const Point& u : grid)
        for (const Point& v : grid)
            check(u, v);
    std::mt19937_64 rng(20240613);
    std::uniform_real_distribution<double> ux(d.lo(), d.hi());
    for (int i = 0; i < 1000; ++i)
        check(at(ux(rng)), at(ux(rng)));

    r.near_enough = true;
    const bool identical = same_frames(g, h, G, H);
    finish(r, "losonczi-sufficient", identical);
    Verdict& v = r.verdict;
    v.notes.push_back(std::string("f is ") + (inc ? "increasing" : "decreasing"));
    if (!identical) {
        if (r.holds && r.reverse_holds)
            v.relation = Relation::EQ;
        else if (r.holds)
            v.relation = Relation::LE;
        else if (r.reverse_holds)
            v.relation = Relation::GE;
        else
            v.notes.push_back("sufficient condition fails in both directions");
    }
    return r;
}

double s_function(double r, double p) {
    return std::pow(r, p) - p * r * std::log(r) - 1.0;
}

std::optional<double> s_second_root(double p) {
    if (p == 0.0)
        throw PreconditionError("S(r) needs p != 0");
    if (!(p > 1.0) || p == 2.0)
        return std::nullopt;
    double lo = 0.0;
    double hi = 0.0;
    if (p > 2.0) {
        // S < 0 on (0, alpha), S > 0 on (alpha, 1).
        lo = 1e-300;
        double delta = 0.5;
        while (s_function(1.0 - delta, p) <= 0.0 && delta > 1e-12)
            delta *= 0.5;
        hi = 1.0 - delta;
        if (s_function(hi, p) <= 0.0)
            return std::nullopt;
    } else {
        // S < 0 on (1, beta), S > 0 beyond.
        double delta = 1.0;
        while (s_function(1.0 + delta, p) >= 0.0 && delta > 1e-12)
            delta *= 0.5;
        lo = 1.0 + delta;
        hi = 2.0;
        while (s_function(hi, p) <= 0.0 && hi < 1e300)
            hi *= 2.0;
        if (s_function(lo, p) >= 0.0 || s_function(hi, p) <= 0.0)
            return std::nullopt;
    }
    const bool neg_low = s_function(lo, p) < 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if ((s_function(mid, p) < 0.0) == neg_low)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double sigma_GE(double r, double p) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw PreconditionError("sigma_GE needs r > 0");
    if (p == 0.0)
        throw PreconditionError("sigma_GE needs p != 0");
    if (r == 1.0)
        return 0.0;
    const double lr = std::log(r);
    const double x = p * lr;
    // ln |r^p - 1|
    const double lden = x > 1.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::abs(std::expm1(x)));
    const double lr_over = lr / (r - 1.0);
    const double expo = p * r * lr_over + std::log(std::abs(x)) - lden - p;
    return std::expm1(expo);
}

double geometric_mean_power(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0))
        throw PreconditionError("the interval must be inside (0, inf)");
    if (a == b)
        return std::pow(a, p);
    const double li = (b * std::log(b) - a * std::log(a)) / (b - a) - 1.0;
    return std::exp(p * li);
}

double elastic_mean_power(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0))
        throw PreconditionError("the interval must be inside (0, inf)");
    if (a == b)
        return std::pow(a, p);
    const double lo = std::min(a, b);
    const double x = p * std::log(std::max(a, b) / lo);
    return std::pow(lo, p) * std::expm1(x) / x;
}

Verdict compare_G_E(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0) || p == 0.0)
        throw PreconditionError("comparing G and E needs a, b > 0 and p != 0");
    Verdict v;
    v.criterion = "sigma-GE";
    if (a == b) {
        v.relation = Relation::EQ;
        return v;
    }
    const double r = std::max(a, b) / std::min(a, b);
    const double s = sigma_GE(r, p);
    v.relation = s < 0.0 ? Relation::LT : (s > 0.0 ? Relation::GT : Relation::EQ);
    v.left = geometric_mean_power(a, b, p);
    v.right = elastic_mean_power(a, b, p);
    v.notes.push_back("sigma_GE(" + num(r) + ", " + num(p) + ") = " + num(s));
    return v;
}

Verdict compare_G_E_by_s_root(double a, double b, double p) {
    if (!(a > 0.0) || !(b > 0.0) || p == 0.0)
        throw PreconditionError("comparing G and E needs a, b > 0 and p != 0");
    Verdict v;
    v.criterion = "s-root";
    const double r = std::max(a, b) / std::min(a, b);
    if (p < 0.0) {
        v.relation = Relation::LE;
        v.case_number = 1;
    } else if (p > 2.0) {
        const double alpha = *s_second_root(p);
        v.notes.push_back("alpha = " + num(alpha));
        if (r <= 1.0 / alpha) {
            v.relation = Relation::LE;
            v.case_number = 2;
        }
    } else if (p > 1.0 && p < 2.0) {
        const double beta = *s_second_root(p);
        v.notes.push_back("beta = " + num(beta));
        if (r <= beta) {
            v.relation = Relation::GE;
            v.case_number = 3;
        }
    } else if (p > 0.0 && p <= 1.0) {
        v.relation = Relation::GE;
        v.case_number = 4;
    }
    if (!v.decided())
        v.notes.push_back("S(r) has no fixed sign on [a/b, b/a]");
    return v;
}

std::optional<double> sigma_GE_threshold(double p, double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo))
        throw PreconditionError("the threshold search needs 0 < lo < hi");
    double slo = sigma_GE(lo, p);
    const double shi = sigma_GE(hi, p);
    if (slo == 0.0)
        return lo;
    if (shi == 0.0)
        return hi;
    if ((slo < 0.0) == (shi < 0.0))
        return std::nullopt;
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double sm = sigma_GE(mid, p);
        if (sm == 0.0)
            return mid;
        if ((sm < 0.0) == (slo < 0.0)) {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace isomean
