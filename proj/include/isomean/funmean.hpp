#pragma once

#include "isomean/frame.hpp"
#include "isomean/function.hpp"
#include "isomean/quadrature.hpp"

#include <string>

namespace isomean {

/// f on fdomain with a 2-D frame (g, h).
struct MeanProblem {
    Function f;
    Interval fdomain;
    Frame frame;

    /// Problem on the interval spanned by a and b, in either order.
    static MeanProblem between(Function f, double a, double b, Frame frame);
};

enum class MeanMethod { ClosedForm, Quadrature, EndpointLimit };

std::string to_string(MeanMethod m);

struct MeanResult {
    double value = 0.0;
    double abs_error = 0.0;
    MeanMethod method = MeanMethod::Quadrature;
    /// Integral of h(f) dg and g(b)-g(a). In endpoint-limit mode with a
    /// divergent denominator these are the last shell increments.
    double numerator = 0.0;
    double denominator = 0.0;
    /// Mean of phi = h(f(g^{-1})) in h-space.
    double phi_mean = 0.0;
    /// f unbounded on the domain: the value is a generalized mean.
    bool generalized = false;
    /// Sampled range hull [inf M, sup M].
    Interval range;
    std::size_t evaluations = 0;
    std::string note;
};

struct MeanOptions {
    QuadOptions quad;
};

/// h^{-1}( integral of h(f(g^{-1}(u))) over g(D) / |g(D)| ). Uses the
/// Stieltjes form integral h(f) g' dx when g' is available, the u-form
/// otherwise, and the endpoint-limit sequence for improper ends.
MeanResult dvi_mean(const MeanProblem& p, const MeanOptions& opt = {});

/// Tagged-partition mean: n equal parts of g(D) with midpoint tags.
double dvi_mean_riemann_oracle(const MeanProblem& p, int n);

/// g = identity.
MeanResult class_I_mean(const Function& f, const Interval& d, const GeneratorMap& h, const MeanOptions& opt = {});
/// h = identity.
MeanResult class_II_mean(const Function& f, const Interval& d, const GeneratorMap& g, const MeanOptions& opt = {});
/// h = g.
MeanResult class_III_mean(const Function& f, const Interval& d, const GeneratorMap& g, const MeanOptions& opt = {});
/// f = identity.
MeanResult class_V_mean(const Interval& d, const GeneratorMap& g, const GeneratorMap& h, const MeanOptions& opt = {});
/// g = f, h = f^{-1}.
MeanResult class_VII_mean(const Expr& f, const Interval& d, const MeanOptions& opt = {});

MeanResult arithmetic_mean(const Function& f, const Interval& d, const MeanOptions& opt = {});
/// exp of the mean of ln f; f > 0 on the interior.
MeanResult geometric_mean(const Function& f, const Interval& d, const MeanOptions& opt = {});
/// (b-a) / integral of 1/f; f of one sign.
MeanResult harmonic_mean(const Function& f, const Interval& d, const MeanOptions& opt = {});
/// Class II with g = ln x; requires d inside (0, inf).
MeanResult elastic_mean(const Function& f, const Interval& d, const MeanOptions& opt = {});
/// p-order mean of power integral (h = y^p, p = 0 gives the geometric mean).
MeanResult power_mean(const Function& f, const Interval& d, double p, const MeanOptions& opt = {});

/// The four class-II means of two monotone functions and the residuals of
/// the two conjugation identities.
struct ConjugationReport {
    double A = 0, B = 0, C = 0, D = 0;
    double E = 0; // class II of f generated by g
    double F = 0; // class II of g generated by f
    double G = 0; // (A+B)/2
    double H = 0; // (C+D)/2
    /// |(AE:EB)(CF:FD) - 1|
    double product_residual = 0;
    /// |GE:AB - FH:CD|
    double ratio_residual = 0;
};

ConjugationReport conjugation_classII(const Expr& f, const Expr& g, const Interval& d, const MeanOptions& opt = {});

} // namespace isomean
