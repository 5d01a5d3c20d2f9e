#pragma once

#include "isomean/expr.hpp"

#include <string>
#include <vector>

namespace isomean {

/// A real function of one variable, given by one expression or piecewise by
/// several. Piece i covers (breaks[i-1], breaks[i]]; the first piece extends
/// to -inf and the last to +inf.
class Function {
public:
    Function() = default;
    Function(Expr e); // NOLINT: a plain expression is a one-piece function
    Function(std::vector<double> breaks, std::vector<Expr> pieces);

    double operator()(double x) const;

    bool single() const noexcept { return pieces_.size() == 1; }
    /// The expression of a one-piece function; throws for piecewise ones.
    const Expr& expr() const;
    const std::vector<double>& breaks() const noexcept { return breaks_; }
    const std::vector<Expr>& pieces() const noexcept { return pieces_; }

    /// Index of the piece that owns x.
    std::size_t piece_index(double x) const noexcept;

    /// Breakpoints strictly inside (lo, hi).
    std::vector<double> breaks_within(double lo, double hi) const;

    /// outer(f(x)) piece by piece.
    Function then(const Expr& outer) const;
    /// Piecewise symbolic derivative (jumps are ignored).
    Function derivative() const;

    std::string str() const;

private:
    std::vector<double> breaks_;
    std::vector<Expr> pieces_{Expr::variable()};
};

} // namespace isomean
