#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace isomean {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Real interval with optional open ends. Infinite endpoints are always open;
/// the degenerate closed interval [a,a] is allowed.
class Interval {
public:
    Interval() = default;
    Interval(double lo, double hi, bool lo_open = false, bool hi_open = false);

    static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval real_line() { return {-kInf, kInf, true, true}; }
    static Interval positive() { return {0.0, kInf, true, true}; }
    static Interval negative() { return {-kInf, 0.0, true, true}; }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    bool lo_open() const noexcept { return lo_open_; }
    bool hi_open() const noexcept { return hi_open_; }

    bool finite() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }
    bool degenerate() const noexcept { return lo_ == hi_; }
    double width() const noexcept { return hi_ - lo_; }
    double midpoint() const noexcept;

    bool contains(double x) const noexcept;
    /// Containment with a mixed absolute/relative slack on finite endpoints.
    bool contains(double x, double slack) const noexcept;
    bool contains(const Interval& other) const noexcept;

    /// Interior point a fraction `t` in (0,1) of the way from lo to hi. Infinite
    /// ends are mapped through x = s/(1-s^2).
    double interior_point(double t) const noexcept;

    std::string to_string() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
    bool lo_open_ = false;
    bool hi_open_ = false;
};

/// Map t in [-1,1] onto the interval; infinite ends use x = s/(1-s^2).
double map_unit_to_interval(const Interval& d, double t) noexcept;

} // namespace isomean
