#pragma once

#include "isomean/classify.hpp"
#include "isomean/expr.hpp"
#include "isomean/interval.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace isomean {

enum class InverseStrategy { ClosedForm, BracketedNumeric };

/// A strictly monotone expression on an interval together with everything
/// needed to invert it: image, cached derivative, a sorted sample table for
/// bracketing and, when available, a verified closed-form inverse.
class MonotoneInverter : public std::enable_shared_from_this<MonotoneInverter> {
public:
    /// Verifies strict monotonicity; throws NotMonotoneError otherwise.
    static std::shared_ptr<const MonotoneInverter> create(const Expr& forward, const Interval& domain);

    /// The inverse map of an existing inverter, with domain and image swapped.
    static std::shared_ptr<const MonotoneInverter> inverse_of(const std::shared_ptr<const MonotoneInverter>& g);

    const Expr& forward() const noexcept { return forward_; }
    const Expr& derivative() const noexcept { return derivative_; }
    const Interval& domain() const noexcept { return domain_; }
    const Interval& image() const noexcept { return image_; }
    bool increasing() const noexcept { return increasing_; }
    const Monotonicity& monotonicity() const noexcept { return monotonicity_; }
    InverseStrategy strategy() const noexcept {
        return closed_ ? InverseStrategy::ClosedForm : InverseStrategy::BracketedNumeric;
    }

    /// Expression of the inverse: the closed form when verified, otherwise an
    /// inverse node over this inverter.
    Expr inverse_expr() const;

    /// x in the domain with |g(x)-u| <= max(1e-12, 1e-12|u|) (or the closest
    /// double). Throws DomainError when u lies outside the image.
    double solve(double u) const;

private:
    MonotoneInverter() = default;
    double solve_numeric(double u) const;
    double residual_tolerance(double u) const;

    Expr forward_;
    Expr derivative_;
    Interval domain_;
    Interval image_;
    bool increasing_ = true;
    Monotonicity monotonicity_;
    std::optional<Expr> closed_;
    std::vector<double> xs_; // ascending, values finite
    std::vector<double> vs_;
};

} // namespace isomean
