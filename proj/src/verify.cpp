#include "isomean/verify.hpp"

#include "isomean/bivariate.hpp"
#include "isomean/classify.hpp"
#include "isomean/compare.hpp"
#include "isomean/error.hpp"
#include "isomean/funmean.hpp"
#include "isomean/nummean.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace isomean {

bool VerifyReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& verify_groups() {
    static const std::vector<std::string> groups{"geometric", "elastic",    "stolarsky",  "identities", "cauchy",
                                                 "comparison", "g-vs-e",   "properties", "undecidable"};
    return groups;
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kSinLnThreshold = 0.860333589019379762;

// Worst residual over the cases of one check.
struct Outcome {
    double residual = 0.0;
    double tolerance = 0.0;
    int cases = 0;
    int failures = 0;
    std::string detail;

    void value(double got, double want, const std::string& what) { record(std::abs(got - want), what); }

    void relative(double got, double want, const std::string& what) {
        record(std::abs(got - want) / std::max(1.0, std::abs(want)), what);
    }

    void record(double r, const std::string& what) {
        ++cases;
        if (!(r <= residual))
            residual = std::isnan(r) ? kInf : r;
        if (!(r <= tolerance)) {
            ++failures;
            if (detail.empty()) {
                std::ostringstream s;
                s.precision(17);
                s << what << ": residual " << r;
                detail = s.str();
            }
        }
    }

    // Pass/fail case with residual 1 on failure.
    void expect(bool ok, const std::string& what) { record(ok ? 0.0 : 1.0, what); }
};

using CheckFn = std::function<void(Outcome&, const MeanOptions&)>;

struct CheckSpec {
    std::string name;
    std::string group;
    int criterion;
    double tolerance;
    CheckFn run;
};

GeneratorMap pos(const char* text) {
    return GeneratorMap(text, Interval::positive());
}

GeneratorMap pos(const Expr& e) {
    return GeneratorMap(e, Interval::positive());
}

GeneratorMap real(const char* text) {
    return GeneratorMap(text, Interval::real_line());
}

Frame frame(GeneratorMap g, GeneratorMap h) {
    return Frame({std::move(g), std::move(h)});
}

Interval open(double a, double b) {
    return Interval(a, b, true, true);
}

Expr power(double p) {
    return p == 0.0 ? parse("ln(x)") : pow(Expr::variable(), Expr::constant(p));
}

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

// Random monotone-friendly problems on positive intervals.
struct Corpus {
    std::vector<const char*> fs{"sin(x)+2", "exp(x)", "x^2+1", "ln(x+2)+1", "1/(x+3)", "x", "cosh(x)", "3-x/2"};
    std::vector<const char*> gs{"x", "exp(x)", "ln(x)", "x^3", "sqrt(x)", "1/x"};
    std::vector<const char*> hs{"x", "ln(x)", "1/x", "x^2", "exp(x)", "x^-0.5"};

    MeanProblem draw(std::mt19937_64& rng) const {
        std::uniform_int_distribution<std::size_t> pf(0, fs.size() - 1);
        std::uniform_int_distribution<std::size_t> pg(0, gs.size() - 1);
        std::uniform_int_distribution<std::size_t> ph(0, hs.size() - 1);
        std::uniform_real_distribution<double> ux(0.2, 4.0);
        double a = ux(rng);
        double b = ux(rng);
        if (std::abs(a - b) < 0.05)
            b = a + 0.5;
        return MeanProblem::between(Function(parse(fs[pf(rng)])), a, b, frame(pos(gs[pg(rng)]), pos(hs[ph(rng)])));
    }
};

std::string label(const MeanProblem& p) {
    return p.f.str() + " on " + p.fdomain.to_string() + " with " + p.frame[0].str() + ", " + p.frame[1].str();
}

void geometric_examples(Outcome& o, const MeanOptions& opt) {
    o.value(geometric_mean(Function(Expr::variable()), open(0, 1), opt).value, 1 / kE, "G(x) on (0,1)");
    o.value(geometric_mean(Function(parse("sin(x)")), open(0, kPi), opt).value, 0.5, "G(sin) on (0,pi)");
}

void geometric_tan(Outcome& o, const MeanOptions& opt) {
    o.value(geometric_mean(Function(parse("tan(x)")), open(0, kPi / 2), opt).value, 1.0, "G(tan) on (0,pi/2)");
}

void geometric_chord(Outcome& o, const MeanOptions& opt) {
    for (double r : {0.5, 1.0, 2.5}) {
        const Expr chord = Expr::constant(2.0) * pow(Expr::constant(r * r) - pow(Expr::variable(), Expr::constant(2.0)),
                                                     Expr::constant(0.5));
        o.value(geometric_mean(Function(chord), open(-r, r), opt).value, 2 / kE * 2 * r, "chord mean, d = " + num(2 * r));
    }
}

void elastic_identity(Outcome& o, const MeanOptions& opt) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int i = 0; i < 20; ++i) {
        double a = u(rng);
        double b = u(rng);
        if (std::abs(a - b) < 1e-3)
            b = a + 1.0;
        const MeanProblem p = MeanProblem::between(Function(Expr::variable()), a, b, frame(pos("ln(x)"), real("x")));
        o.value(elastic_mean(p.f, p.fdomain, opt).value, (b - a) / (std::log(b) - std::log(a)),
                "E(x) on " + p.fdomain.to_string());
    }
}

void elastic_tan(Outcome& o, const MeanOptions& opt) {
    o.value(elastic_mean(Function(parse("tan(x)")), open(0, kPi / 2), opt).value, 2 / kPi, "E(tan) on (0,pi/2)");
}

void stolarsky_grid(Outcome& o, const MeanOptions&) {
    const std::vector<double> orders{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0};
    const std::vector<std::pair<double, double>> ends{{0.5, 2.0}, {1.0, 3.0}, {1.5, 1.5}, {0.2, 5.0}};
    std::set<StolarskyBranch> seen;
    int points = 0;
    for (auto [a, b] : ends) {
        for (double p : orders) {
            for (double q : orders) {
                if (points >= 200)
                    break;
                seen.insert(a == b ? StolarskyBranch::Degenerate : stolarsky_branch(p, q));
                const double direct = classV_bivariate(pos(power(p)), pos(power(q)), a, b);
                o.relative(quasi_stolarsky({p, q, a, b}), direct,
                           "Q(" + num(p) + "," + num(q) + ") on [" + num(a) + "," + num(b) + "]");
                ++points;
            }
        }
    }
    o.expect(points == 200, "grid size " + std::to_string(points));
    o.expect(seen.size() == 7, "branches covered " + std::to_string(seen.size()));
}

void stolarsky_closed(Outcome& o, const MeanOptions&) {
    o.expect(quasi_stolarsky({2, 1, 1, 2}) == 14.0 / 9.0, "Q(2,1) on [1,2] = 14/9");
}

void class_III_identity(Outcome& o, const MeanOptions& opt) {
    for (const char* g : {"x^3", "exp(x)", "ln(x)", "1/x", "sqrt(x)"}) {
        const GeneratorMap m = pos(g);
        for (auto [a, b] : {std::pair{0.5, 2.0}, std::pair{1.0, 4.0}}) {
            const double want = m.inverse((m(a) + m(b)) / 2);
            o.relative(class_III_mean(Function(Expr::variable()), Interval(a, b), m, opt).value, want,
                       std::string("class III of x with ") + g);
        }
    }
}

void class_I_inverse(Outcome& o, const MeanOptions& opt) {
    struct Pair {
        const char* f;
        const char* inv;
        double a, b;
        Interval base;
    };
    for (const Pair& c : {Pair{"exp(x)", "ln(x)", 0.3, 2.0, Interval::positive()},
                          Pair{"x^3", "x^(1/3)", 0.5, 2.0, Interval::positive()},
                          Pair{"2*x+1", "(x-1)/2", -1.0, 3.0, Interval::real_line()},
                          Pair{"1/x", "1/x", 0.5, 4.0, Interval::positive()}}) {
        const Function f(parse(c.f));
        const double want = f((c.a + c.b) / 2);
        o.relative(class_I_mean(f, Interval(c.a, c.b), GeneratorMap(c.inv, c.base), opt).value, want,
                   std::string("class I of ") + c.f + " with its inverse");
    }
}

void class_II_self(Outcome& o, const MeanOptions& opt) {
    for (const char* fs : {"exp(x)", "x^2", "ln(x)", "sqrt(x)", "1/x"}) {
        const Expr f = parse(fs);
        const double a = 0.5;
        const double b = 3.0;
        o.relative(class_II_mean(Function(f), Interval(a, b), pos(f), opt).value, (f(a) + f(b)) / 2,
                   std::string("class II of ") + fs + " with itself");
    }
}

void class_VII_power(Outcome& o, const MeanOptions& opt) {
    for (double e : {0.5, 2.0, 3.0}) {
        for (double c : {1.0, 2.0}) {
            const double want = std::pow(e / (e + 1), e) * std::pow(c, e);
            o.relative(class_VII_mean(power(e), Interval(0, c), opt).value, want,
                       "class VII of x^" + num(e) + " on [0," + num(c) + "]");
        }
    }
}

void cauchy_log_mean(Outcome& o, const MeanOptions&) {
    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.5, 6.0}, std::pair{2.0, 2.5}}) {
        const double cauchy = cauchy_mean_value(parse("ln(x)"), Expr::variable(), a, b);
        const double class_v = classV_bivariate(real("x"), pos("1/x"), a, b);
        const double logmean = (b - a) / std::log(b / a);
        o.relative(cauchy, logmean, "Cauchy(ln, x) on [" + num(a) + "," + num(b) + "]");
        o.relative(cauchy, class_v, "Cauchy(ln, x) against class V(x, 1/x)");
    }
}

void cauchy_conversions(Outcome& o, const MeanOptions&) {
    const GeneratorMap id = GeneratorMap::identity();
    const GeneratorMap ln = pos("ln(x)");
    const Interval d(0.5, 2.0);
    for (const char* f : {"x", "x^2+1", "exp(x)", "sqrt(x)", "ln(x+1)", "1/x", "1/(x+1)", "x^3", "cosh(x)",
                          "2-exp(-x)"}) {
        o.record(classV_to_cauchy(id, ln, parse(f), d).residual, std::string("geometric conversion of ") + f);
        o.record(classV_to_cauchy(ln, id, parse(f), d).residual, std::string("elastic conversion of ") + f);
    }
}

// Numeric check of a number-mean verdict on random tuples from d.
void number_tuples(Outcome& o, const GeneratorMap& g, const GeneratorMap& h, double lo, double hi, Relation want,
                   const std::string& what) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(lo, hi);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> xs{u(rng), u(rng), u(rng)};
        const double l = iso_mean(xs, g);
        const double r = iso_mean(xs, h);
        o.expect(satisfies(want, l, r, 1e-12 * std::max(1.0, std::abs(r))), what + " on random tuples");
    }
}

void comparison_sin_ln(Outcome& o, const MeanOptions&) {
    const GeneratorMap s("sin(x)", Interval(0, 1.5));
    const GeneratorMap l = pos("ln(x)");
    const Verdict below = compare_number_means(s, l, open(0, kSinLnThreshold));
    o.expect(below.relation == Relation::GE, "sin/ln below the threshold: " + below.summary());
    number_tuples(o, s, l, 0.05, kSinLnThreshold, Relation::GE, "sin/ln below the threshold");
    const Verdict above = compare_number_means(s, l, Interval(kSinLnThreshold, 1.5, true, false));
    o.expect(above.relation == Relation::LE, "sin/ln above the threshold: " + above.summary());
    number_tuples(o, s, l, kSinLnThreshold, 1.5, Relation::LE, "sin/ln above the threshold");
}

void comparison_sinh_cosh(Outcome& o, const MeanOptions&) {
    const GeneratorMap sh = real("sinh(x)");
    const GeneratorMap ch("cosh(x)", Interval(0, kInf, false, true));
    const Verdict v = compare_number_means(sh, ch, Interval::positive());
    o.expect(v.relation == Relation::LE, "sinh against cosh: " + v.summary());
    number_tuples(o, sh, ch, 0.01, 5.0, Relation::LE, "sinh against cosh");
}

Verdict compare(const char* f, const Interval& d, Frame l, Frame r, const MeanOptions& opt) {
    return compare_function_means(ComparisonScenario::make(Function(parse(f)), d, std::move(l), std::move(r)), opt);
}

void comparison_tan(Outcome& o, const MeanOptions& opt) {
    const Verdict v = compare("tan(x)", Interval(0.1, 1.5), frame(pos("ln(x)"), real("x")), frame(real("x"), real("x")),
                              opt);
    o.expect(implies(v.relation, Relation::LE) && v.criterion == "class-II-ratio" && v.case_number == 6,
             "tan class II: " + v.summary());
}

void comparison_quadratic(Outcome& o, const MeanOptions& opt) {
    for (auto [a, b] : {std::pair{0.5, 2.0}, std::pair{1.0, 5.0}, std::pair{0.1, 0.3}}) {
        const Verdict v =
            compare("x", Interval(a, b), frame(pos("x^2"), real("x")), frame(real("x"), real("x")), opt);
        o.expect(implies(v.relation, Relation::GE), "x^2 against x: " + v.summary());
        const double closed = 2 * (a * a + a * b + b * b) / (3 * (a + b));
        o.expect(std::abs(*v.left - closed) <= 1e-10 * closed, "left mean " + num(*v.left) + " vs " + num(closed));
        o.expect(std::abs(*v.right - (a + b) / 2) <= 1e-10 * (a + b), "right mean " + num(*v.right));
    }
}

void comparison_arc(Outcome& o, const MeanOptions& opt) {
    const Interval q(0, kPi / 2);
    const GeneratorMap c("cos(x)", q);
    const GeneratorMap s("sin(x)", q);
    for (auto [a, b] : {std::pair{0.2, 1.3}, std::pair{0.05, 0.6}, std::pair{0.9, 1.5}}) {
        const Verdict v = compare("pi/2-x", Interval(a, b), frame(c, s), frame(s, c), opt);
        const double arcsin = std::asin((std::cos(a) + std::cos(b)) / 2);
        const double arccos = std::acos((std::sin(a) + std::sin(b)) / 2);
        o.expect(v.relation == Relation::LT && v.criterion == "exchanged-DM", "exchanged cos/sin: " + v.summary());
        o.expect(arcsin < arccos, "arcsin below arccos on [" + num(a) + "," + num(b) + "]");
        o.expect(std::abs(*v.left - arcsin) <= 1e-9 && std::abs(*v.right - arccos) <= 1e-9,
                 "closed forms " + num(*v.left) + ", " + num(*v.right));
    }
}

void comparison_power(Outcome& o, const MeanOptions& opt) {
    for (auto [p, q] : {std::pair{3.0, 2.0}, std::pair{2.0, 0.5}, std::pair{1.0, -1.0}, std::pair{0.5, 0.0}}) {
        const GeneratorMap gp = pos(power(p));
        const GeneratorMap gq = pos(power(q));
        const Verdict v = compare("x+1", Interval(0, 2), frame(gp, gp), frame(gq, gq), opt);
        o.expect(v.relation == Relation::GT, "power means " + num(p) + " over " + num(q) + ": " + v.summary());
    }
}

void g_vs_e_root(Outcome& o, const MeanOptions&) {
    const auto r = s_second_root(3);
    o.record(r ? std::abs(*r - 0.2142142) : kInf, "second root of S for p = 3");
}

void g_vs_e_sign(Outcome& o, const MeanOptions&) {
    for (double r : {1.01, 2.0, 10.0, 100.0})
        o.expect(sigma_GE(r, 2) > 0, "sigma(" + num(r) + ", 2) = " + num(sigma_GE(r, 2)));
    o.expect(sigma_GE(600, 3) * sigma_GE(800, 3) < 0, "sign change of sigma(., 3) inside (600, 800)");
    const auto t = sigma_GE_threshold(3, 600, 800);
    o.expect(t && *t > 600 && *t < 800, "threshold " + (t ? num(*t) : std::string("missing")));
}

void g_vs_e_symmetry(Outcome& o, const MeanOptions&) {
    for (double p : {0.5, 2.0, 3.0, -1.0})
        for (double r : {1.5, 3.0, 10.0, 700.0})
            o.record(std::abs(sigma_GE(r, p) - sigma_GE(1 / r, p)), "sigma symmetry at r = " + num(r));
}

void property_ivp(Outcome& o, const MeanOptions& opt) {
    const Corpus c;
    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; ++i) {
        const MeanProblem p = c.draw(rng);
        const double v = dvi_mean(p, opt).value;
        const RangeEstimate range = estimate_range(p.f, p.fdomain);
        bool inside = v >= range.inf - 1e-9 && v <= range.sup + 1e-9;
        if (range.sup - range.inf > 1e-6)
            inside = inside && v > range.inf && v < range.sup;
        o.expect(inside, "IVP for " + label(p));
    }
}

void property_scaleshift(Outcome& o, const MeanOptions& opt) {
    const Corpus c;
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> uk(-3.0, 3.0);
    std::uniform_real_distribution<double> ux(0.2, 4.0);
    const auto shift = [&] {
        double k = uk(rng);
        if (std::abs(k) < 0.2)
            k = 1.5;
        return ScaleShift{k, uk(rng)};
    };
    for (int i = 0; i < 100; ++i) {
        const MeanProblem p = c.draw(rng);
        const double base = dvi_mean(p, opt).value;
        const GeneratorMap g2(v_scaleshift(p.frame[0].expr(), shift()), p.frame[0].domain());
        const GeneratorMap h2(v_scaleshift(p.frame[1].expr(), shift()), p.frame[1].domain());
        const double moved = dvi_mean({p.f, p.fdomain, frame(g2, h2)}, opt).value;
        o.record(std::abs(moved - base) / std::abs(base), "function mean " + label(p));
    }
    for (int i = 0; i < 100; ++i) {
        const GeneratorMap g = pos(c.gs[i % c.gs.size()]);
        std::vector<double> xs{ux(rng), ux(rng), ux(rng), ux(rng)};
        const double base = iso_mean(xs, g);
        const double moved = iso_mean(xs, GeneratorMap(v_scaleshift(g.expr(), shift()), g.domain()));
        o.record(std::abs(moved - base) / std::abs(base), "number mean with " + g.str());
    }
}

void property_symmetry(Outcome& o, const MeanOptions& opt) {
    const Corpus c;
    std::mt19937_64 rng(47);
    for (int i = 0; i < 100; ++i) {
        const MeanProblem p = c.draw(rng);
        const MeanProblem reversed = MeanProblem::between(p.f, p.fdomain.hi(), p.fdomain.lo(), p.frame);
        o.expect(dvi_mean(p, opt).value == dvi_mean(reversed, opt).value, "endpoint order for " + label(p));
        const double a = p.fdomain.lo();
        const double b = p.fdomain.hi();
        o.expect(classV_bivariate(p.frame[0], p.frame[1], a, b) == classV_bivariate(p.frame[0], p.frame[1], b, a),
                 "class V endpoint order");
    }
}

void property_dominance(Outcome& o, const MeanOptions& opt) {
    const Corpus c;
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ut(0.05, 0.95);
    std::uniform_real_distribution<double> uc(0.01, 2.0);
    for (int i = 0; i < 100; ++i) {
        const MeanProblem p = c.draw(rng);
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
        const double base = dvi_mean(p, opt).value;
        const double bumped = dvi_mean({Function({x1, x2}, {f, f + bump, f}), p.fdomain, p.frame}, opt).value;
        o.expect(bumped > base - 1e-12 * std::max(1.0, std::abs(base)), "bump above " + label(p));
    }
}

void property_oracle(Outcome& o, const MeanOptions& opt) {
    const Corpus c;
    std::mt19937_64 rng(59);
    for (int i = 0; i < 30; ++i) {
        const MeanProblem p = c.draw(rng);
        o.record(std::abs(dvi_mean(p, opt).value - dvi_mean_riemann_oracle(p, 1 << 16)), "oracle for " + label(p));
    }
}

void property_conjugation(Outcome& o, const MeanOptions& opt) {
    const std::vector<const char*> fs{"x^2", "exp(x)", "ln(x)", "sqrt(x)", "x^3", "1/x", "x+exp(x)"};
    int pairs = 0;
    for (std::size_t i = 0; i < fs.size() && pairs < 20; ++i) {
        for (std::size_t j = i + 1; j < fs.size() && pairs < 20; ++j) {
            const ConjugationReport r = conjugation_classII(parse(fs[i]), parse(fs[j]), Interval(1, 2), opt);
            const std::string what = std::string("conjugation of ") + fs[i] + " and " + fs[j];
            o.record(r.product_residual, what);
            o.record(r.ratio_residual, what);
            ++pairs;
        }
    }
}

void property_derivative(Outcome& o, const MeanOptions&) {
    struct Entry {
        const char* text;
        double lo, hi;
    };
    const Entry corpus[] = {
        {"x^2+3*x-1", -3, 3},   {"x^3", -2, 2},        {"x^0.5", 0.1, 9},         {"x^-1.5", 0.2, 5},
        {"ln(x)", 0.05, 20},    {"exp(x)", -5, 5},     {"exp(-x^2)", -2, 2},      {"sin(x)", -3, 3},
        {"cos(x)", -3, 3},      {"tan(x)", -1.4, 1.4}, {"sinh(x)", -4, 4},        {"cosh(x)", -4, 4},
        {"x^x", 0.2, 3},        {"2^x", -3, 3},        {"ln(1+x^2)", -3, 3},      {"sin(exp(x))", -3, 1},
        {"x*ln(x)-x", 0.1, 5},  {"1/(1+x^2)", -3, 3},  {"(x+1)/(x-4)", -3, 3},    {"sqrt(x^2+1)", -3, 3},
        {"tan(x)/x", 0.1, 1.5}, {"-x^2*exp(x)", -2, 2}, {"cosh(x)^2-sinh(x)^2", -2, 2},
    };
    std::mt19937_64 rng(61);
    for (const Entry& c : corpus) {
        const Expr e = parse(c.text);
        const Expr de = differentiate(e);
        std::uniform_real_distribution<double> u(c.lo, c.hi);
        const double scale = std::max({1.0, std::abs(c.lo), std::abs(c.hi)});
        for (int i = 0; i < 50; ++i) {
            const double x = u(rng);
            const double h = 1e-5 * scale;
            const double d1 = (e(x + h) - e(x - h)) / (2 * h);
            const double d2 = (e(x + h / 2) - e(x - h / 2)) / h;
            const double fd = (4 * d2 - d1) / 3;
            const double sym = de(x);
            const double denom = std::max({std::abs(sym), std::abs(e(x)) / scale, 1e-8});
            o.record(std::abs(sym - fd) / denom, std::string("derivative of ") + c.text + " at " + num(x));
        }
    }
}

void undecidable(Outcome& o, const MeanOptions& opt) {
    struct Instance {
        const char* what;
        const char* f;
        const char* g;
        const char* h;
        const char* G;
        const char* H;
    };
    for (const Instance& c : {Instance{"exchanged mappings with increasing f", "x", "x^2", "x", "x", "x^2"},
                              Instance{"class III pair with decreasing f", "3-x", "x^2", "x^2", "x", "x"},
                              Instance{"general case with opposite ratio trends", "x^2", "x^3", "x", "x", "x^2"},
                              Instance{"exchanged mappings, second open case", "x+1", "exp(x)", "x", "x", "exp(x)"}}) {
        const Verdict v = compare(c.f, Interval(1, 2), frame(pos(c.g), pos(c.h)), frame(pos(c.G), pos(c.H)), opt);
        o.expect(v.relation == Relation::Undecided, std::string(c.what) + ": " + v.summary());
    }
}

const std::vector<CheckSpec>& registry() {
    static const std::vector<CheckSpec> checks{
        {"geometric-examples", "geometric", 1, 1e-8, geometric_examples},
        {"geometric-tan", "geometric", 1, 1e-6, geometric_tan},
        {"geometric-chord", "geometric", 1, 1e-7, geometric_chord},
        {"elastic-identity", "elastic", 2, 1e-10, elastic_identity},
        {"elastic-tan", "elastic", 2, 1e-5, elastic_tan},
        {"stolarsky-grid", "stolarsky", 3, 1e-9, stolarsky_grid},
        {"stolarsky-closed-form", "stolarsky", 3, 0.0, stolarsky_closed},
        {"class-III-identity", "identities", 4, 1e-10, class_III_identity},
        {"class-I-inverse", "identities", 4, 1e-10, class_I_inverse},
        {"class-II-self", "identities", 4, 1e-10, class_II_self},
        {"class-VII-power", "identities", 4, 1e-8, class_VII_power},
        {"cauchy-log-mean", "cauchy", 5, 1e-9, cauchy_log_mean},
        {"cauchy-conversions", "cauchy", 5, 1e-7, cauchy_conversions},
        {"sin-ln-threshold", "comparison", 6, 0.0, comparison_sin_ln},
        {"sinh-cosh", "comparison", 6, 0.0, comparison_sinh_cosh},
        {"tan-class-II", "comparison", 6, 0.0, comparison_tan},
        {"quadratic-class-II", "comparison", 6, 0.0, comparison_quadratic},
        {"arccos-arcsin", "comparison", 6, 0.0, comparison_arc},
        {"power-class-III", "comparison", 6, 0.0, comparison_power},
        {"s-root", "g-vs-e", 7, 1e-6, g_vs_e_root},
        {"sigma-sign", "g-vs-e", 7, 0.0, g_vs_e_sign},
        {"sigma-symmetry", "g-vs-e", 7, 1e-12, g_vs_e_symmetry},
        {"ivp", "properties", 8, 0.0, property_ivp},
        {"v-scaleshift", "properties", 8, 1e-10, property_scaleshift},
        {"endpoint-symmetry", "properties", 8, 0.0, property_symmetry},
        {"monotone-dominance", "properties", 8, 0.0, property_dominance},
        {"partition-oracle", "properties", 8, 1e-4, property_oracle},
        {"conjugation", "properties", 8, 1e-9, property_conjugation},
        {"derivative", "properties", 8, 1e-6, property_derivative},
        {"undecided-instances", "undecidable", 9, 0.0, undecidable},
    };
    return checks;
}

bool selected(const CheckSpec& c, const std::vector<std::string>& only) {
    if (only.empty())
        return true;
    return std::any_of(only.begin(), only.end(), [&](const std::string& s) { return s == c.group || s == c.name; });
}

} // namespace

VerifyReport run_verification(const VerifyOptions& opt) {
    for (const std::string& s : opt.only) {
        const auto& all = registry();
        if (std::none_of(all.begin(), all.end(), [&](const CheckSpec& c) { return s == c.group || s == c.name; }))
            throw PreconditionError("unknown check or group '" + s + "'");
    }
    MeanOptions mo;
    if (opt.quad_tolerance) {
        if (!(*opt.quad_tolerance >= 1e-14))
            throw PreconditionError("tolerance overrides must be at least 1e-14");
        mo.quad.abs_tol = *opt.quad_tolerance;
        mo.quad.rel_tol = *opt.quad_tolerance;
    }
    VerifyReport report;
    for (const CheckSpec& c : registry()) {
        if (!selected(c, opt.only))
            continue;
        Outcome o;
        o.tolerance = c.tolerance;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o, mo);
        } catch (const std::exception& e) {
            o.residual = kInf;
            o.detail = std::string("threw: ") + e.what();
            ++o.failures;
        }
        CheckResult r;
        r.name = c.name;
        r.group = c.group;
        r.criterion = c.criterion;
        r.residual = o.residual;
        r.tolerance = c.tolerance;
        r.passed = o.failures == 0 && o.cases > 0;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.detail = o.detail.empty() ? std::to_string(o.cases) + " cases" : o.detail;
        report.checks.push_back(std::move(r));
    }
    return report;
}

} // namespace isomean
