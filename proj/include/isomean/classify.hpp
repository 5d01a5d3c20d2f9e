#pragma once

#include "isomean/expr.hpp"
#include "isomean/function.hpp"
#include "isomean/interval.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace isomean {

inline constexpr int kSampleCount = 257;

enum class MonotonicityClass { StrictlyIncreasing, StrictlyDecreasing, Constant, NonMonotone, Unknown };

/// Convexity in the "convex to lower" sense.
enum class ConvexityClass { Convex, Concave, StrictlyConvex, StrictlyConcave, Affine, Mixed, Unknown };

std::string to_string(MonotonicityClass c);
std::string to_string(ConvexityClass c);

struct Monotonicity {
    MonotonicityClass cls = MonotonicityClass::Unknown;
    /// Two points whose slopes have opposite signs (NonMonotone only).
    std::optional<std::pair<double, double>> witness;
    int resolution = 0;
    std::string note;

    bool strict() const noexcept {
        return cls == MonotonicityClass::StrictlyIncreasing || cls == MonotonicityClass::StrictlyDecreasing;
    }
    bool increasing() const noexcept { return cls == MonotonicityClass::StrictlyIncreasing; }
    bool decreasing() const noexcept { return cls == MonotonicityClass::StrictlyDecreasing; }
};

struct Convexity {
    ConvexityClass cls = ConvexityClass::Unknown;
    /// Subintervals with opposite second-difference signs (Mixed only).
    std::optional<std::pair<Interval, Interval>> witness;
    int resolution = 0;
    std::string note;

    bool convex() const noexcept {
        return cls == ConvexityClass::Convex || cls == ConvexityClass::StrictlyConvex || cls == ConvexityClass::Affine;
    }
    bool concave() const noexcept {
        return cls == ConvexityClass::Concave || cls == ConvexityClass::StrictlyConcave ||
               cls == ConvexityClass::Affine;
    }
    bool strict() const noexcept {
        return cls == ConvexityClass::StrictlyConvex || cls == ConvexityClass::StrictlyConcave;
    }
};

/// Chebyshev-Lobatto points of d in ascending order, with infinite ends mapped
/// through x = t/(1-t^2). Points at infinity are dropped.
std::vector<double> sample_points(const Interval& d, int n = kSampleCount);

Monotonicity classify_monotonicity(const Expr& e, const Interval& d);
/// Same, reusing an already computed derivative `de` of `e`.
Monotonicity classify_monotonicity(const Expr& e, const Expr& de, const Interval& d);
/// Piecewise functions: each piece is classified and the jumps must agree.
Monotonicity classify_monotonicity(const Function& f, const Interval& d);

Convexity classify_convexity(const Expr& e, const Interval& d);
Convexity classify_convexity(const Expr& e, const Expr& d2e, const Interval& d);

enum class Side { Lower, Upper };

/// Value of e at the given end of d, or its one-sided limit when the end is
/// open, infinite or not evaluable. Returns +-inf for divergent limits.
double endpoint_limit(const Expr& e, const Interval& d, Side side);

/// Sampled range of f over d together with endpoint limits.
struct RangeEstimate {
    double inf = 0.0;
    double sup = 0.0;
    bool inf_attained = true;
    bool sup_attained = true;
    /// Interval [inf, sup] with open ends where the bound is not attained.
    Interval hull() const;
};

RangeEstimate estimate_range(const Function& f, const Interval& d);

} // namespace isomean
