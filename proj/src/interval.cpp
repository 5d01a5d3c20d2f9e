#include "isomean/interval.hpp"

#include "isomean/error.hpp"

#include <algorithm>
#include <sstream>

namespace isomean {

Interval::Interval(double lo, double hi, bool lo_open, bool hi_open)
    : lo_(lo), hi_(hi), lo_open_(lo_open || std::isinf(lo)), hi_open_(hi_open || std::isinf(hi)) {
    if (std::isnan(lo) || std::isnan(hi))
        throw PreconditionError("interval endpoint is NaN");
    if (lo > hi)
        throw PreconditionError("interval endpoints out of order: " + to_string());
    if (lo == hi && (lo_open_ || hi_open_))
        throw PreconditionError("degenerate interval must be closed");
}

double Interval::midpoint() const noexcept {
    return map_unit_to_interval(*this, 0.0);
}

bool Interval::contains(double x) const noexcept {
    if (std::isnan(x))
        return false;
    const bool above = lo_open_ ? x > lo_ : x >= lo_;
    const bool below = hi_open_ ? x < hi_ : x <= hi_;
    return above && below;
}

bool Interval::contains(double x, double slack) const noexcept {
    if (contains(x))
        return true;
    if (std::isnan(x))
        return false;
    const auto near = [slack](double e, double v) {
        return std::isfinite(e) && std::abs(v - e) <= slack * std::max(1.0, std::abs(e));
    };
    return near(lo_, x) || near(hi_, x);
}

bool Interval::contains(const Interval& o) const noexcept {
    const bool lo_ok = o.lo_ > lo_ || (o.lo_ == lo_ && (!lo_open_ || o.lo_open_));
    const bool hi_ok = o.hi_ < hi_ || (o.hi_ == hi_ && (!hi_open_ || o.hi_open_));
    return lo_ok && hi_ok;
}

double Interval::interior_point(double t) const noexcept {
    return map_unit_to_interval(*this, 2.0 * t - 1.0);
}

std::string Interval::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << (lo_open_ ? '(' : '[') << lo_ << ", " << hi_ << (hi_open_ ? ')' : ']');
    return os.str();
}

double map_unit_to_interval(const Interval& d, double t) noexcept {
    const double lo = d.lo();
    const double hi = d.hi();
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    if (!lo_inf && !hi_inf)
        return 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
    if (lo_inf && hi_inf)
        return t / (1.0 - t * t);
    if (hi_inf) {
        const double s = 0.5 * (t + 1.0);
        return lo + s / (1.0 - s * s);
    }
    const double s = 0.5 * (1.0 - t);
    return hi - s / (1.0 - s * s);
}

} // namespace isomean
