#pragma once

#include "isomean/interval.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace isomean {

class MonotoneInverter;

enum class Op {
    Const,
    Var,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Ln,
    Exp,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Abs,
    // g^{-1}(arg) for a verified monotone g without closed-form inverse.
    // Produced by inversion only, never by the parser.
    Inverse,
};

/// Immutable expression tree over a single real variable.
///
/// Nodes are shared and never mutated, so copies are cheap and values can be
/// used from many threads. Smart constructors fold constants and drop
/// neutral elements (x+0, 1*x, x^1, ...); no other simplification happens.
class Expr {
public:
    /// Constant zero.
    Expr();
    Expr(double value); // NOLINT: implicit by design of the operator DSL

    static Expr constant(double value);
    static Expr named_constant(std::string name, double value);
    static Expr variable();
    static Expr inverse_of(std::shared_ptr<const MonotoneInverter> inverter, Expr arg);

    Op op() const noexcept;
    bool is_constant() const noexcept { return op() == Op::Const; }
    bool is_variable() const noexcept { return op() == Op::Var; }
    bool is_constant(double v) const noexcept;
    /// Constant payload; only meaningful for Op::Const.
    double constant_value() const noexcept;
    /// "pi" or "e" for named constants, empty otherwise.
    std::string_view constant_name() const noexcept;
    bool depends_on_variable() const noexcept;
    /// Number of occurrences of the variable in the tree.
    int variable_count() const noexcept;

    /// Children; lhs() is the sole child of unary nodes.
    const Expr& lhs() const;
    const Expr& rhs() const;
    const std::shared_ptr<const MonotoneInverter>& inverter() const;

    /// Evaluate at x. Throws DomainError instead of returning NaN or inf.
    double operator()(double x) const;

    std::string str() const;

    bool structurally_equal(const Expr& other) const noexcept;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(Op op, Expr a, Expr b = Expr());

    std::shared_ptr<const Node> node_;

    friend Expr operator-(const Expr&);
    friend Expr operator+(const Expr&, const Expr&);
    friend Expr operator-(const Expr&, const Expr&);
    friend Expr operator*(const Expr&, const Expr&);
    friend Expr operator/(const Expr&, const Expr&);
    friend Expr pow(const Expr&, const Expr&);
    friend Expr apply(Op, const Expr&);
};

Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Expr& exponent);
/// Unary function node (Ln, Exp, Sin, Cos, Tan, Sinh, Cosh, Abs, Neg).
Expr apply(Op fn, const Expr& arg);

inline Expr ln(const Expr& a) { return apply(Op::Ln, a); }
inline Expr exp(const Expr& a) { return apply(Op::Exp, a); }
inline Expr sin(const Expr& a) { return apply(Op::Sin, a); }
inline Expr cos(const Expr& a) { return apply(Op::Cos, a); }
inline Expr tan(const Expr& a) { return apply(Op::Tan, a); }
inline Expr sinh(const Expr& a) { return apply(Op::Sinh, a); }
inline Expr cosh(const Expr& a) { return apply(Op::Cosh, a); }
inline Expr abs(const Expr& a) { return apply(Op::Abs, a); }
inline Expr sqrt(const Expr& a) { return pow(a, Expr(0.5)); }

/// Parse the expression grammar. Both `x` and `y` name the variable.
Expr parse(std::string_view text);

inline double evaluate(const Expr& e, double x) { return e(x); }

/// Symbolic derivative with respect to the variable.
Expr differentiate(const Expr& e);

/// outer(inner(x)): every occurrence of the variable in `outer` replaced by `inner`.
Expr compose(const Expr& outer, const Expr& inner);

/// Symbolic inverse when the variable occurs once along a chain of invertible
/// nodes (affine, power, exp, ln, reciprocal, sinh). The result may hold only on
/// one branch; callers verify it before use.
std::optional<Expr> closed_form_inverse(const Expr& e);

/// Scale k (nonzero) and shift C.
struct ScaleShift {
    double k = 1.0;
    double C = 0.0;
};

/// k*f(x)+C
Expr v_scaleshift(const Expr& f, ScaleShift s);
/// f((u-C)/k)
Expr h_scaleshift(const Expr& f, ScaleShift s);
/// k*f((u-Q)/p)+L with horizontal (p,Q) and vertical (k,L).
Expr hv_scaleshift(const Expr& f, ScaleShift horizontal, ScaleShift vertical);

/// k*D+C, reordered when k<0.
Interval scaleshift_interval(const Interval& d, ScaleShift s);

} // namespace isomean
