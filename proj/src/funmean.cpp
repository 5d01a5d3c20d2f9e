#include "isomean/funmean.hpp"

#include "isomean/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace isomean {

std::string to_string(MeanMethod m) {
    switch (m) {
    case MeanMethod::ClosedForm:
        return "closed-form";
    case MeanMethod::Quadrature:
        return "quadrature";
    case MeanMethod::EndpointLimit:
        break;
    }
    return "quadrature+endpoint-limit";
}

namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::optional<double> try_eval(const auto& fn, double x) {
    try {
        const double v = fn(x);
        if (std::isfinite(v))
            return v;
    } catch (const DomainError&) {
    }
    return std::nullopt;
}

struct Partial {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

// Integral of h(f) dg over [lo, hi] (lo < hi), split at the breaks of f.
class Integrator {
public:
    Integrator(const Function& f, const GeneratorMap& g, const GeneratorMap& h, bool xform, const QuadOptions& q)
        : f_(f), g_(g), h_(h), dg_(g.derivative()), xform_(xform), q_(q) {}

    Partial over(double lo, double hi) {
        Partial out;
        if (!(lo < hi))
            return out;
        std::vector<double> cuts{lo};
        for (double b : f_.breaks_within(lo, hi))
            cuts.push_back(b);
        cuts.push_back(hi);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            QuadResult r;
            if (xform_) {
                r = integrate([this](double x) { return h_(f_(x)) * dg_(x); }, cuts[i], cuts[i + 1], q_);
            } else {
                r = integrate([this](double u) { return h_(f_(g_.inverse(u))); }, g_(cuts[i]), g_(cuts[i + 1]), q_);
            }
            evaluations += r.evaluations;
            out.value += r.value;
            out.error += r.error;
            out.converged = out.converged && r.converged && std::isfinite(r.value);
        }
        return out;
    }

    bool xform() const noexcept { return xform_; }

    std::size_t evaluations = 0;

private:
    const Function& f_;
    const GeneratorMap& g_;
    const GeneratorMap& h_;
    Expr dg_;
    bool xform_;
    QuadOptions q_;
};

// Expression of the piece of f adjacent to `end` on the inside of the domain.
const Expr& inner_piece(const Function& f, double end, bool lower) {
    std::size_t i = f.piece_index(end);
    if (lower && i + 1 < f.pieces().size() && i < f.breaks().size() && f.breaks()[i] == end)
        ++i;
    return f.pieces()[i];
}

bool bad_end(const Function& f, const GeneratorMap& g, const GeneratorMap& h, const Interval& d, bool lower) {
    const double end = lower ? d.lo() : d.hi();
    if (!std::isfinite(end) || !g.domain().contains(end))
        return true;
    if (!try_eval(g, end))
        return true;
    const auto fv = try_eval(f, end);
    if (!fv || !try_eval(h, *fv))
        return true;
    try {
        const double lim = endpoint_limit(inner_piece(f, end, lower), Interval(d.lo(), d.hi(), true, true),
                                          lower ? Side::Lower : Side::Upper);
        return !std::isfinite(lim);
    } catch (const DomainError&) {
        return true;
    }
}

// Limit of a sequence: three successive values agreeing, or two successive
// Aitken extrapolations agreeing.
std::optional<double> sequence_limit(const std::vector<double>& v, double& err) {
    const std::size_t n = v.size();
    if (n < 3)
        return std::nullopt;
    const double last = v[n - 1];
    const double tol = 1e-8 * std::max(1.0, std::abs(last));
    if (std::abs(v[n - 1] - v[n - 2]) <= tol && std::abs(v[n - 2] - v[n - 3]) <= tol) {
        err = std::abs(v[n - 1] - v[n - 2]);
        return last;
    }
    std::vector<double> aitken;
    for (std::size_t j = 2; j < n; ++j) {
        const double d1 = v[j] - v[j - 1];
        const double d0 = v[j - 1] - v[j - 2];
        if (d0 == 0.0)
            continue;
        const double r = d1 / d0;
        if (std::abs(r) >= 1.0)
            continue;
        aitken.push_back(v[j] + d1 * r / (1.0 - r));
    }
    const std::size_t m = aitken.size();
    if (m >= 2) {
        const double a = aitken[m - 1];
        if (std::abs(a - aitken[m - 2]) <= 1e-8 * std::max(1.0, std::abs(a))) {
            err = std::abs(a - aitken[m - 2]);
            return a;
        }
    }
    return std::nullopt;
}

std::vector<double> stolz_ratios(const std::vector<double>& ns, const std::vector<double>& ds) {
    std::vector<double> ratios;
    for (std::size_t j = 1; j < ns.size(); ++j) {
        const double dd = ds[j] - ds[j - 1];
        if (dd == 0.0)
            break;
        ratios.push_back((ns[j] - ns[j - 1]) / dd);
    }
    return ratios;
}

// The shell sequence has reached its limit; deeper shells only add rounding noise.
bool settled(const std::vector<double>& ns, const std::vector<double>& ds, bool d_converges) {
    double err = 0.0;
    return d_converges ? sequence_limit(ns, err).has_value() : sequence_limit(stolz_ratios(ns, ds), err).has_value();
}

struct Phi {
    double mean = 0.0;
    double error = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    MeanMethod method = MeanMethod::Quadrature;
    std::string note;
};

Phi limit_mode(Integrator& in, const GeneratorMap& g, const Interval& d, bool lo_bad, bool hi_bad) {
    const double a = d.lo();
    const double b = d.hi();
    const auto cut = [&](int k, bool lower) {
        const double end = lower ? a : b;
        const double other = lower ? b : a;
        const double inward = lower ? 1.0 : -1.0;
        if (std::isfinite(end)) {
            const double span = std::isfinite(other) ? b - a : std::max(1.0, std::abs(end));
            return end + inward * std::pow(10.0, -(k + 1)) * span;
        }
        const double base = std::isfinite(other) ? std::max(1.0, std::abs(other)) : 1.0;
        return -inward * std::pow(10.0, k) * base;
    };

    std::optional<double> g_lo;
    std::optional<double> g_hi;
    const auto g_end = [&](bool lower) -> std::optional<double> {
        const bool bad = lower ? lo_bad : hi_bad;
        const double end = lower ? a : b;
        if (!bad)
            return g(end);
        try {
            const double v = endpoint_limit(g.expr(), d, lower ? Side::Lower : Side::Upper);
            if (std::isfinite(v))
                return v;
        } catch (const DomainError&) {
        }
        return std::nullopt;
    };
    g_lo = g_end(true);
    g_hi = g_end(false);
    const bool d_converges = g_lo && g_hi;

    std::vector<double> ns;
    std::vector<double> ds;
    double acc_err = 0.0;
    double lo = lo_bad ? cut(1, true) : a;
    double hi = hi_bad ? cut(1, false) : b;
    std::string stop;
    try {
        const Partial first = in.over(lo, hi);
        if (!first.converged)
            throw DivergenceError("the integral does not converge on the inner interval [" + num(lo) + ", " +
                                  num(hi) + "]");
        ns.push_back(first.value);
        ds.push_back(g(hi) - g(lo));
        acc_err = first.error;
        for (int k = 2; k <= 11; ++k) {
            const double nlo = lo_bad ? cut(k, true) : a;
            const double nhi = hi_bad ? cut(k, false) : b;
            const Partial left = in.over(nlo, lo);
            const Partial right = in.over(hi, nhi);
            if (!left.converged || !right.converged) {
                stop = "shell integral stopped converging";
                break;
            }
            const double dv = g(nhi) - g(nlo);
            if (!std::isfinite(dv))
                break;
            ns.push_back(ns.back() + left.value + right.value);
            ds.push_back(dv);
            acc_err += left.error + right.error;
            lo = nlo;
            hi = nhi;
            if (settled(ns, ds, d_converges))
                break;
        }
    } catch (const DomainError&) {
        stop = "evaluation failed near the endpoint";
    }

    Phi out;
    out.method = MeanMethod::EndpointLimit;
    double seq_err = 0.0;
    if (d_converges) {
        const auto n_lim = sequence_limit(ns, seq_err);
        if (!n_lim)
            throw DivergenceError("the endpoint-limit sequence of the numerator does not converge" +
                                  (stop.empty() ? std::string() : " (" + stop + ")"));
        double n_val = *n_lim;
        double n_err = seq_err + acc_err;
        out.note = "numerator by endpoint limit";
        if (in.xform()) {
            try {
                const Partial full = in.over(a, b);
                if (full.converged && std::abs(full.value - n_val) <= 1e-6 * std::max(1.0, std::abs(n_val))) {
                    n_val = full.value;
                    n_err = std::max(full.error, 0.0);
                    out.note = "numerator by open-interval quadrature, confirmed by endpoint limit";
                }
            } catch (const DomainError&) {
            }
        }
        const double den = *g_hi - *g_lo;
        out.numerator = n_val;
        out.denominator = den;
        out.mean = n_val / den;
        out.error = n_err / std::abs(den);
        return out;
    }

    const std::vector<double> ratios = stolz_ratios(ns, ds);
    const auto r_lim = sequence_limit(ratios, seq_err);
    if (!r_lim)
        throw DivergenceError("the ratio of shell integrals does not converge" +
                              (stop.empty() ? std::string() : " (" + stop + ")"));
    out.numerator = ns.back() - ns[ns.size() - 2];
    out.denominator = ds.back() - ds[ds.size() - 2];
    out.mean = *r_lim;
    out.error = seq_err;
    out.note = "denominator diverges; mean by ratio of shell increments";
    return out;
}

double invert_mean(const GeneratorMap& h, double m, const RangeEstimate& hull) {
    try {
        return h.inverse(m);
    } catch (const DomainError&) {
    }
    const Interval& img = h.image();
    const double slack = 1e-9 * std::max(1.0, std::abs(m));
    const bool below = m <= img.lo();
    const double gap = below ? img.lo() - m : m - img.hi();
    if (gap > slack || !std::isfinite(hull.inf) || !std::isfinite(hull.sup))
        throw PreconditionError("phi-mean " + num(m) + " lies outside the invertible image " + img.to_string() +
                                " of h");
    return below == h.increasing() ? hull.inf : hull.sup;
}

void require_frame(const Frame& fr) {
    if (fr.dimension() != 2)
        throw PreconditionError("a function mean needs a two-dimensional frame (g, h)");
}

} // namespace

MeanProblem MeanProblem::between(Function f, double a, double b, Frame frame) {
    return MeanProblem{std::move(f), Interval(std::min(a, b), std::max(a, b)), std::move(frame)};
}

MeanResult dvi_mean(const MeanProblem& p, const MeanOptions& opt) {
    require_frame(p.frame);
    const GeneratorMap& g = p.frame[0];
    const GeneratorMap& h = p.frame[1];
    const Interval& d = p.fdomain;
    MeanResult res;
    if (d.degenerate()) {
        res.value = p.f(d.lo());
        res.method = MeanMethod::ClosedForm;
        res.range = Interval(res.value, res.value);
        res.note = "degenerate interval";
        return res;
    }
    const Interval interior(d.lo(), d.hi(), true, true);
    if (!g.domain().contains(interior))
        throw PreconditionError("domain " + d.to_string() + " is not inside the base " + g.domain().to_string() +
                                " of g");
    const RangeEstimate range = estimate_range(p.f, interior);
    res.range = range.hull();
    if (!h.domain().contains(res.range))
        throw PreconditionError("range hull " + res.range.to_string() + " of f is not inside the base " +
                                h.domain().to_string() + " of h");
    if (range.inf == range.sup) {
        res.value = range.inf;
        res.method = MeanMethod::ClosedForm;
        res.note = "constant function";
        return res;
    }
    res.generalized = !std::isfinite(range.inf) || !std::isfinite(range.sup);

    bool xform = true;
    for (double x : sample_points(interior, 17)) {
        if (!try_eval(g.derivative(), x)) {
            xform = false;
            break;
        }
    }
    const bool lo_bad = bad_end(p.f, g, h, d, true);
    const bool hi_bad = bad_end(p.f, g, h, d, false);
    Integrator in(p.f, g, h, xform, opt.quad);

    Phi phi;
    bool done = false;
    if (!lo_bad && !hi_bad && !res.generalized) {
        try {
            const Partial r = in.over(d.lo(), d.hi());
            if (r.converged) {
                phi.numerator = r.value;
                phi.denominator = g(d.hi()) - g(d.lo());
                phi.mean = r.value / phi.denominator;
                phi.error = r.error / std::abs(phi.denominator);
                phi.method = MeanMethod::Quadrature;
                done = true;
            }
        } catch (const DomainError&) {
        }
    }
    if (!done) {
        const bool both = !lo_bad && !hi_bad;
        phi = limit_mode(in, g, d, lo_bad || both, hi_bad || both);
    }

    res.numerator = phi.numerator;
    res.denominator = phi.denominator;
    res.phi_mean = phi.mean;
    res.method = phi.method;
    res.note = phi.note;
    res.evaluations = in.evaluations;
    double v = invert_mean(h, phi.mean, range);
    if (std::isfinite(range.inf))
        v = std::max(v, range.inf);
    if (std::isfinite(range.sup))
        v = std::min(v, range.sup);
    res.value = v;
    const auto dh = try_eval(h.derivative(), v);
    res.abs_error = dh && *dh != 0.0 ? phi.error / std::abs(*dh) : phi.error;
    return res;
}

double dvi_mean_riemann_oracle(const MeanProblem& p, int n) {
    require_frame(p.frame);
    if (n < 2)
        throw PreconditionError("the partition needs at least two parts");
    if (!p.fdomain.finite())
        throw PreconditionError("the partition oracle needs a finite interval");
    const GeneratorMap& g = p.frame[0];
    const GeneratorMap& h = p.frame[1];
    const double u0 = g(p.fdomain.lo());
    const double u1 = g(p.fdomain.hi());
    const double du = (u1 - u0) / n;
    double s = 0.0;
    double c = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = u0 + (i + 0.5) * du;
        const double x = std::clamp(g.inverse(u), p.fdomain.lo(), p.fdomain.hi());
        const double term = h(p.f(x));
        const double next = s + term;
        c += std::abs(s) >= std::abs(term) ? (s - next) + term : (term - next) + s;
        s = next;
    }
    return h.inverse((s + c) / n);
}

namespace {

MeanResult with_frame(const Function& f, const Interval& d, GeneratorMap g, GeneratorMap h, const MeanOptions& opt) {
    return dvi_mean(MeanProblem{f, d, Frame({std::move(g), std::move(h)})}, opt);
}

GeneratorMap identity_map() {
    return GeneratorMap::identity(Interval::real_line());
}

} // namespace

MeanResult class_I_mean(const Function& f, const Interval& d, const GeneratorMap& h, const MeanOptions& opt) {
    return with_frame(f, d, identity_map(), h, opt);
}

MeanResult class_II_mean(const Function& f, const Interval& d, const GeneratorMap& g, const MeanOptions& opt) {
    return with_frame(f, d, g, identity_map(), opt);
}

MeanResult class_III_mean(const Function& f, const Interval& d, const GeneratorMap& g, const MeanOptions& opt) {
    return with_frame(f, d, g, g, opt);
}

MeanResult class_V_mean(const Interval& d, const GeneratorMap& g, const GeneratorMap& h, const MeanOptions& opt) {
    return with_frame(Function(Expr::variable()), d, g, h, opt);
}

MeanResult class_VII_mean(const Expr& f, const Interval& d, const MeanOptions& opt) {
    const GeneratorMap g(f, d);
    return with_frame(Function(f), d, g, g.inverted(), opt);
}

MeanResult arithmetic_mean(const Function& f, const Interval& d, const MeanOptions& opt) {
    return with_frame(f, d, identity_map(), identity_map(), opt);
}

MeanResult geometric_mean(const Function& f, const Interval& d, const MeanOptions& opt) {
    return with_frame(f, d, identity_map(), GeneratorMap("ln(x)", Interval::positive()), opt);
}

MeanResult harmonic_mean(const Function& f, const Interval& d, const MeanOptions& opt) {
    Interval side = Interval::positive();
    if (!d.degenerate()) {
        const RangeEstimate r = estimate_range(f, Interval(d.lo(), d.hi(), true, true));
        if (Interval::negative().contains(r.hull()))
            side = Interval::negative();
        else if (!Interval::positive().contains(r.hull()))
            throw PreconditionError("the harmonic mean needs a function of one sign");
    }
    return with_frame(f, d, identity_map(), GeneratorMap("1/x", side), opt);
}

MeanResult elastic_mean(const Function& f, const Interval& d, const MeanOptions& opt) {
    if (!(d.lo() >= 0.0))
        throw PreconditionError("the elastic mean needs 0 <= a < b");
    return with_frame(f, d, GeneratorMap("ln(x)", Interval::positive()), identity_map(), opt);
}

MeanResult power_mean(const Function& f, const Interval& d, double p, const MeanOptions& opt) {
    if (p == 0.0)
        return geometric_mean(f, d, opt);
    if (p == 1.0)
        return arithmetic_mean(f, d, opt);
    const GeneratorMap h(pow(Expr::variable(), Expr::constant(p)), Interval::positive());
    return with_frame(f, d, identity_map(), h, opt);
}

ConjugationReport conjugation_classII(const Expr& f, const Expr& g, const Interval& d, const MeanOptions& opt) {
    if (!d.finite() || d.degenerate())
        throw PreconditionError("conjugation needs a finite non-degenerate interval");
    const GeneratorMap fm(f, d);
    const GeneratorMap gm(g, d);
    ConjugationReport r;
    r.A = f(d.lo());
    r.B = f(d.hi());
    r.C = g(d.lo());
    r.D = g(d.hi());
    r.G = 0.5 * (r.A + r.B);
    r.H = 0.5 * (r.C + r.D);
    if (f.str() == g.str()) {
        r.E = r.G;
        r.F = r.H;
    } else {
        r.E = class_II_mean(Function(f), d, gm, opt).value;
        r.F = class_II_mean(Function(g), d, fm, opt).value;
    }
    if (r.E == r.A || r.E == r.B || r.F == r.C || r.F == r.D)
        throw PreconditionError("degenerate conjugation: a class-II mean equals an endpoint value");
    r.product_residual = std::abs((r.E - r.A) / (r.B - r.E) * ((r.F - r.C) / (r.D - r.F)) - 1.0);
    r.ratio_residual = std::abs((r.E - r.G) / (r.B - r.A) - (r.H - r.F) / (r.D - r.C));
    return r;
}

} // namespace isomean
