#pragma once

#include "isomean/classify.hpp"
#include "isomean/frame.hpp"

#include <string>

namespace isomean {

enum class Trend { Increasing, Decreasing, Constant, None };

std::string to_string(Trend t);

struct TrendReport {
    Trend trend = Trend::None;
    Monotonicity detail;
    /// Printed form of the classified expression.
    std::string expr;
};

/// Monotonicity of |a'/b'| on d. The absolute value is taken as the
/// sign-normalized ratio m*a'/b' with m = +-1 from the directions of a and b.
TrendReport abs_ratio_trend(const GeneratorMap& a, const GeneratorMap& b, const Interval& d);

/// Monotonicity of the plain ratio a'/b' on d.
TrendReport ratio_trend(const GeneratorMap& a, const GeneratorMap& b, const Interval& d);

/// Convexity of a(b^{-1}(u)) for u in b(d).
Convexity composite_convexity(const GeneratorMap& a, const GeneratorMap& b, const Interval& d);

/// Increasing/Decreasing/Constant trend of a classification, None otherwise.
Trend trend_of(const Monotonicity& m) noexcept;

} // namespace isomean
