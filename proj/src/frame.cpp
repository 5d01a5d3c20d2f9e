#include "isomean/frame.hpp"

#include "isomean/error.hpp"

namespace isomean {

GeneratorMap::GeneratorMap(const Expr& e, const Interval& domain) : impl_(MonotoneInverter::create(e, domain)) {}

GeneratorMap::GeneratorMap(std::string_view text, const Interval& domain) : GeneratorMap(parse(text), domain) {}

GeneratorMap GeneratorMap::identity(const Interval& domain) {
    return GeneratorMap(Expr::variable(), domain);
}

bool GeneratorMap::is_identity() const noexcept {
    return expr().is_variable();
}

GeneratorMap GeneratorMap::inverted() const {
    return GeneratorMap(MonotoneInverter::inverse_of(impl_));
}

GeneratorMap GeneratorMap::restricted(const Interval& sub) const {
    if (!domain().contains(sub))
        throw PreconditionError(sub.to_string() + " is not inside the domain " + domain().to_string());
    return GeneratorMap(expr(), sub);
}

std::string GeneratorMap::str() const {
    return expr().str() + " on " + domain().to_string();
}

Frame::Frame(std::vector<GeneratorMap> dms) : dms_(std::move(dms)) {
    if (dms_.empty())
        throw PreconditionError("a frame needs at least one dimensional mapping");
    if (dms_.size() > 2)
        throw PreconditionError("frames of more than two dimensions are not supported");
}

std::vector<double> Frame::apply(const std::vector<double>& point) const {
    if (point.size() != dms_.size())
        throw PreconditionError("point dimension does not match the frame");
    std::vector<double> out(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (!dms_[i].domain().contains(point[i]))
            throw DomainError(DomainError::Kind::OutOfDomain, "point outside the base of the frame");
        out[i] = dms_[i](point[i]);
    }
    return out;
}

std::vector<double> Frame::apply_inverse(const std::vector<double>& point) const {
    if (point.size() != dms_.size())
        throw PreconditionError("point dimension does not match the frame");
    std::vector<double> out(point.size());
    for (std::size_t i = 0; i < point.size(); ++i)
        out[i] = dms_[i].inverse(point[i]);
    return out;
}

Frame make_frame(std::vector<GeneratorMap> dms) {
    return Frame(std::move(dms));
}

Frame make_frame(const std::vector<std::pair<Expr, Interval>>& specs) {
    std::vector<GeneratorMap> dms;
    dms.reserve(specs.size());
    for (const auto& [e, d] : specs)
        dms.emplace_back(e, d);
    return Frame(std::move(dms));
}

Frame invert_frame(const Frame& fr) {
    std::vector<GeneratorMap> dms;
    dms.reserve(fr.dimension());
    for (const auto& g : fr.dms())
        dms.push_back(g.inverted());
    return Frame(std::move(dms));
}

BondedReport check_bonded(const Function& f, const Interval& fdomain, const Frame& fr) {
    if (fr.dimension() != 2)
        throw PreconditionError("bonding needs a two-dimensional frame");
    const GeneratorMap& g = fr[0];
    const GeneratorMap& h = fr[1];
    BondedReport r;
    r.domain_ok = g.domain().contains(fdomain);
    r.range = estimate_range(f, fdomain);
    const Interval y = h.domain();
    const bool inf_finite = std::isfinite(r.range.inf);
    const bool sup_finite = std::isfinite(r.range.sup);

    // M inside Y: an unattained bound may sit on an open end of Y.
    const auto lower_in = [&](bool attained) {
        if (r.range.inf > y.lo())
            return true;
        return r.range.inf == y.lo() && (!y.lo_open() || !attained);
    };
    const auto upper_in = [&](bool attained) {
        if (r.range.sup < y.hi())
            return true;
        return r.range.sup == y.hi() && (!y.hi_open() || !attained);
    };
    r.range_in_base = lower_in(r.range.inf_attained) && upper_in(r.range.sup_attained);
    r.hull_ok = inf_finite && sup_finite && lower_in(true) && upper_in(true) && y.contains(r.range.inf) &&
                y.contains(r.range.sup);

    if (!r.domain_ok)
        r.reason = "domain " + fdomain.to_string() + " is not inside the base " + g.domain().to_string() + " of g";
    else if (!r.range_in_base)
        r.reason = "range of f is not inside the base " + y.to_string() + " of h";
    else if (!r.hull_ok)
        r.reason = "range hull " + r.range.hull().to_string() + " of f is not inside the base " + y.to_string() +
                   " of h";
    return r;
}

} // namespace isomean
