#pragma once

#include "isomean/frame.hpp"
#include "isomean/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isomean {

struct QuasiStolarskyParams {
    double p = 1.0;
    double q = 1.0;
    double a = 1.0;
    double b = 1.0;
};

enum class StolarskyBranch { Degenerate, Generic, PowerMean, Geometric, OppositeOrders, ZeroP, ZeroQ };

std::string to_string(StolarskyBranch b);

/// Formula branch used for (p, q); orders closer than 1e-9 to a limit case
/// take the limit branch.
StolarskyBranch stolarsky_branch(double p, double q) noexcept;

/// (p(b^{p+q}-a^{p+q}) / ((p+q)(b^p-a^p)))^{1/q} and its limit forms.
double quasi_stolarsky(const QuasiStolarskyParams& s);

/// Class V mean h^{-1}( integral of h dg / (g(b)-g(a)) ), symmetric in a, b.
double classV_bivariate(const GeneratorMap& g, const GeneratorMap& h, double a, double b);

/// (f'/g')^{-1}((f(b)-f(a)) / (g(b)-g(a))). Throws PreconditionError when
/// g' vanishes or f'/g' is not strictly monotone on [a, b].
double cauchy_mean_value(const Expr& f, const Expr& g, double a, double b);

struct CauchyToClassV {
    GeneratorMap h;
    double cauchy = 0.0;
    double class_v = 0.0;
    double residual = 0.0;
};

/// h = f'/g' turns the Cauchy mean into the class V mean generated by g, h.
CauchyToClassV cauchy_to_classV(const Expr& f, const GeneratorMap& g, const Interval& d);

/// Running integral of an expression from a base point, built once on an
/// adaptively refined grid and read through cubic Hermite interpolation.
/// Read-only after construction.
class Antiderivative {
public:
    Antiderivative(Expr integrand, const Interval& domain, double tolerance = 1e-9);

    double operator()(double x) const;
    double derivative(double x) const { return integrand_(x); }
    double base() const noexcept { return nodes_.front(); }
    const Expr& integrand() const noexcept { return integrand_; }
    std::size_t nodes() const noexcept { return nodes_.size(); }
    /// Largest relative mismatch between the interpolant and direct
    /// quadrature at cell midpoints, measured during the build.
    double build_error() const noexcept { return build_error_; }

private:
    Expr integrand_;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    double build_error_ = 0.0;
};

struct ClassVToCauchy {
    Antiderivative l;
    double mean = 0.0;     // dvi mean of f generated by g, h
    double preimage = 0.0; // f^{-1} of the mean
    double cauchy = 0.0;   // D_{lg}(a, b) through l
    double residual = 0.0;
};

/// l = integral of (h o f) g' and f^{-1}(M_f|g,h) = D_{lg}(a, b).
ClassVToCauchy classV_to_cauchy(const GeneratorMap& g, const GeneratorMap& h, const Expr& f, const Interval& d);

/// Outcome of a sampled Losonczi-type condition. The verdict relates
/// M_f|g,h (left) to M_f|G,H (right).
struct ConditionReport {
    bool holds = false;
    bool strict = false;
    bool reverse_holds = false;
    bool near_enough = false;
    double worst_margin = 0.0;
    int samples = 0;
    Verdict verdict;
};

/// gamma''/gamma' + 2g''/g' against Gamma''/Gamma' + 2G''/G' on the sample
/// grid, gamma = h o f, Gamma = H o f, with the direction of f selecting <=
/// or >=. Asserted as an ordering only when the interval is near enough
/// (relative width at most 1e-2) and the inequality is strict.
ConditionReport losonczi_necessary(const Expr& f, const GeneratorMap& g, const GeneratorMap& h, const GeneratorMap& G,
                                   const GeneratorMap& H, const Interval& d);

/// ((gamma(u)-gamma(v))/gamma'(v)) g'(u)/g'(v) against the same with Gamma
/// and G on a 64x64 grid and 1000 random pairs.
ConditionReport losonczi_sufficient(const Expr& f, const GeneratorMap& g, const GeneratorMap& h, const GeneratorMap& G,
                                    const GeneratorMap& H, const Interval& d);

/// S(r) = r^p - p r ln r - 1.
double s_function(double r, double p);
/// The root of S other than 1: below 1 for p > 2, above 1 for 1 < p < 2,
/// none otherwise.
std::optional<double> s_second_root(double p);

/// Relative difference G/E - 1 of the geometric and elastic means of x^p on
/// an interval with endpoint ratio r. Zero at r = 1.
double sigma_GE(double r, double p);

/// Geometric and elastic means of x^p on [a, b] in closed form.
double geometric_mean_power(double a, double b, double p);
double elastic_mean_power(double a, double b, double p);

/// Exact ordering of G (left) and E (right) for x^p on [a, b] from the sign
/// of sigma_GE.
Verdict compare_G_E(double a, double b, double p);

/// Sufficient ordering from the sign pattern of S on [a/b, b/a].
Verdict compare_G_E_by_s_root(double a, double b, double p);

/// Ratio r in (lo, hi) where sigma_GE(r, p) changes sign, by bisection.
std::optional<double> sigma_GE_threshold(double p, double lo, double hi);

} // namespace isomean
