#pragma once

#include "isomean/classify.hpp"
#include "isomean/expr.hpp"
#include "isomean/function.hpp"
#include "isomean/interval.hpp"
#include "isomean/inversion.hpp"

#include <memory>
#include <string>
#include <vector>

namespace isomean {

/// A dimensional mapping: a strictly monotone expression restricted to an
/// interval, verified at construction.
class GeneratorMap {
public:
    /// Verifies monotonicity on `domain`; throws NotMonotoneError.
    GeneratorMap(const Expr& e, const Interval& domain);
    GeneratorMap(std::string_view text, const Interval& domain);

    static GeneratorMap identity(const Interval& domain = Interval::real_line());

    const Expr& expr() const noexcept { return impl_->forward(); }
    const Expr& derivative() const noexcept { return impl_->derivative(); }
    const Interval& domain() const noexcept { return impl_->domain(); }
    const Interval& image() const noexcept { return impl_->image(); }
    MonotonicityClass monotonicity() const noexcept { return impl_->monotonicity().cls; }
    bool increasing() const noexcept { return impl_->increasing(); }
    InverseStrategy inverse_strategy() const noexcept { return impl_->strategy(); }
    bool is_identity() const noexcept;

    double operator()(double x) const { return impl_->forward()(x); }
    /// g^{-1}(u); throws DomainError when u lies outside the image.
    double inverse(double u) const { return impl_->solve(u); }
    /// Expression of g^{-1} (closed form or an inverse node).
    Expr inverse_expr() const { return impl_->inverse_expr(); }
    GeneratorMap inverted() const;

    /// The same expression restricted to a subinterval of the domain.
    GeneratorMap restricted(const Interval& sub) const;

    const std::shared_ptr<const MonotoneInverter>& inverter() const noexcept { return impl_; }

    std::string str() const;

private:
    explicit GeneratorMap(std::shared_ptr<const MonotoneInverter> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const MonotoneInverter> impl_;
};

/// u with |g(x)-u| small; see GeneratorMap::inverse.
inline double invert_eval(const GeneratorMap& g, double u) {
    return g.inverse(u);
}

/// An isomorphic frame of one or two dimensional mappings acting componentwise.
class Frame {
public:
    explicit Frame(std::vector<GeneratorMap> dms);

    std::size_t dimension() const noexcept { return dms_.size(); }
    const GeneratorMap& operator[](std::size_t i) const { return dms_.at(i); }
    const std::vector<GeneratorMap>& dms() const noexcept { return dms_; }

    std::vector<double> apply(const std::vector<double>& point) const;
    std::vector<double> apply_inverse(const std::vector<double>& point) const;

private:
    std::vector<GeneratorMap> dms_;
};

Frame make_frame(std::vector<GeneratorMap> dms);
/// Builds and verifies each mapping from (expression, domain) pairs.
Frame make_frame(const std::vector<std::pair<Expr, Interval>>& specs);
Frame invert_frame(const Frame& fr);

/// Result of checking that f on D is bonded on the base of a 2-D frame.
struct BondedReport {
    bool domain_ok = false;     // D inside the base of g
    bool range_in_base = false; // sampled range M inside the base of h
    bool hull_ok = false;       // [inf M, sup M] inside the base of h
    RangeEstimate range;
    std::string reason;

    bool bonded() const noexcept { return domain_ok && hull_ok; }
};

BondedReport check_bonded(const Function& f, const Interval& fdomain, const Frame& fr);

} // namespace isomean
