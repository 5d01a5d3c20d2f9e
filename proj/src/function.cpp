#include "isomean/function.hpp"

#include "isomean/error.hpp"

#include <algorithm>
#include <charconv>

namespace isomean {

Function::Function(Expr e) : pieces_{std::move(e)} {}

Function::Function(std::vector<double> breaks, std::vector<Expr> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (pieces_.size() != breaks_.size() + 1)
        throw PreconditionError("piecewise function needs one more piece than breakpoints");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
        std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end())
        throw PreconditionError("breakpoints must be strictly increasing");
    for (double b : breaks_)
        if (!std::isfinite(b))
            throw PreconditionError("breakpoints must be finite");
}

std::size_t Function::piece_index(double x) const noexcept {
    return static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin());
}

double Function::operator()(double x) const {
    return pieces_[piece_index(x)](x);
}

const Expr& Function::expr() const {
    if (!single())
        throw PreconditionError("piecewise function has no single expression");
    return pieces_.front();
}

std::vector<double> Function::breaks_within(double lo, double hi) const {
    std::vector<double> out;
    for (double b : breaks_)
        if (b > lo && b < hi)
            out.push_back(b);
    return out;
}

Function Function::then(const Expr& outer) const {
    std::vector<Expr> pieces;
    pieces.reserve(pieces_.size());
    for (const auto& p : pieces_)
        pieces.push_back(compose(outer, p));
    return {breaks_, std::move(pieces)};
}

Function Function::derivative() const {
    std::vector<Expr> pieces;
    pieces.reserve(pieces_.size());
    for (const auto& p : pieces_)
        pieces.push_back(differentiate(p));
    return {breaks_, std::move(pieces)};
}

std::string Function::str() const {
    if (single())
        return pieces_.front().str();
    std::string s = "piecewise(";
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        s += pieces_[i].str();
        if (i < breaks_.size()) {
            char buf[32];
            auto r = std::to_chars(buf, buf + sizeof buf, breaks_[i]);
            s += " | x<=" + std::string(buf, r.ptr) + "; ";
        }
    }
    return s + ")";
}

} // namespace isomean
