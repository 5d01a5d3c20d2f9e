#include "isomean/expr.hpp"

#include "isomean/error.hpp"
#include "isomean/inversion.hpp"

#include <charconv>
#include <cmath>

namespace isomean {

struct Expr::Node {
    Op op = Op::Const;
    double value = 0.0;
    std::string name;
    Expr a;
    Expr b;
    std::shared_ptr<const MonotoneInverter> inv;
    int var_count = 0;
};

namespace {

bool is_integer(double v) {
    return std::abs(v) < 9.0e15 && std::nearbyint(v) == v;
}

double checked(double r, const char* what) {
    if (std::isnan(r))
        throw DomainError(DomainError::Kind::OutOfDomain, std::string(what) + " undefined");
    if (std::isinf(r))
        throw DomainError(DomainError::Kind::Overflow, std::string(what) + " overflows");
    return r;
}

double apply_unary(Op op, double a) {
    switch (op) {
    case Op::Neg:
        return -a;
    case Op::Ln:
        if (a < 0.0)
            throw DomainError(DomainError::Kind::OutOfDomain, "ln of negative argument");
        if (a == 0.0)
            throw DomainError(DomainError::Kind::Pole, "ln of zero");
        return std::log(a);
    case Op::Exp:
        return checked(std::exp(a), "exp");
    case Op::Sin:
        return checked(std::sin(a), "sin");
    case Op::Cos:
        return checked(std::cos(a), "cos");
    case Op::Tan:
        return checked(std::tan(a), "tan");
    case Op::Sinh:
        return checked(std::sinh(a), "sinh");
    case Op::Cosh:
        return checked(std::cosh(a), "cosh");
    case Op::Abs:
        return std::abs(a);
    default:
        break;
    }
    throw Error("not a unary operator");
}

double apply_binary(Op op, double a, double b) {
    switch (op) {
    case Op::Add:
        return checked(a + b, "sum");
    case Op::Sub:
        return checked(a - b, "difference");
    case Op::Mul:
        return checked(a * b, "product");
    case Op::Div:
        if (b == 0.0)
            throw DomainError(DomainError::Kind::Pole, "division by zero");
        return checked(a / b, "quotient");
    case Op::Pow:
        if (a < 0.0 && !is_integer(b))
            throw DomainError(DomainError::Kind::OutOfDomain, "negative base with non-integer exponent");
        if (a == 0.0 && b < 0.0)
            throw DomainError(DomainError::Kind::Pole, "zero to a negative power");
        return checked(std::pow(a, b), "power");
    default:
        break;
    }
    throw Error("not a binary operator");
}

bool is_unary(Op op) {
    switch (op) {
    case Op::Neg:
    case Op::Ln:
    case Op::Exp:
    case Op::Sin:
    case Op::Cos:
    case Op::Tan:
    case Op::Sinh:
    case Op::Cosh:
    case Op::Abs:
        return true;
    default:
        return false;
    }
}

const char* function_name(Op op) {
    switch (op) {
    case Op::Ln:
        return "ln";
    case Op::Exp:
        return "exp";
    case Op::Sin:
        return "sin";
    case Op::Cos:
        return "cos";
    case Op::Tan:
        return "tan";
    case Op::Sinh:
        return "sinh";
    case Op::Cosh:
        return "cosh";
    case Op::Abs:
        return "abs";
    default:
        return "?";
    }
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Binding strength used by the printer.
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

} // namespace

Expr::Expr() = default;

Expr::Expr(double value) : Expr(constant(value)) {}

Expr Expr::constant(double value) {
    if (!std::isfinite(value))
        throw DomainError(DomainError::Kind::Overflow, "non-finite constant");
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = value;
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::named_constant(std::string name, double value) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = value;
    n->name = std::move(name);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::variable() {
    static const Expr var = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::Var;
        n->var_count = 1;
        return Expr(std::shared_ptr<const Node>(std::move(n)));
    }();
    return var;
}

Expr Expr::inverse_of(std::shared_ptr<const MonotoneInverter> inverter, Expr arg) {
    if (!inverter)
        throw PreconditionError("inverse node needs an inverter");
    auto n = std::make_shared<Node>();
    n->op = Op::Inverse;
    n->var_count = arg.variable_count();
    n->a = std::move(arg);
    n->inv = std::move(inverter);
    if (n->var_count == 0)
        return Expr(n->inv->solve(n->a.constant_value()));
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make(Op op, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->var_count = a.variable_count() + b.variable_count();
    n->a = std::move(a);
    n->b = std::move(b);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Op Expr::op() const noexcept {
    return node_ ? node_->op : Op::Const;
}

bool Expr::is_constant(double v) const noexcept {
    return is_constant() && constant_value() == v;
}

double Expr::constant_value() const noexcept {
    return node_ ? node_->value : 0.0;
}

std::string_view Expr::constant_name() const noexcept {
    return node_ ? std::string_view(node_->name) : std::string_view();
}

bool Expr::depends_on_variable() const noexcept {
    return variable_count() > 0;
}

int Expr::variable_count() const noexcept {
    return node_ ? node_->var_count : 0;
}

const Expr& Expr::lhs() const {
    static const Expr empty;
    return node_ ? node_->a : empty;
}

const Expr& Expr::rhs() const {
    static const Expr empty;
    return node_ ? node_->b : empty;
}

const std::shared_ptr<const MonotoneInverter>& Expr::inverter() const {
    static const std::shared_ptr<const MonotoneInverter> none;
    return node_ ? node_->inv : none;
}

double Expr::operator()(double x) const {
    if (!node_)
        return 0.0;
    const Node& n = *node_;
    switch (n.op) {
    case Op::Const:
        return n.value;
    case Op::Var:
        return x;
    case Op::Inverse:
        return n.inv->solve(n.a(x));
    default:
        break;
    }
    if (is_unary(n.op))
        return apply_unary(n.op, n.a(x));
    return apply_binary(n.op, n.a(x), n.b(x));
}

bool Expr::structurally_equal(const Expr& other) const noexcept {
    if (node_ == other.node_)
        return true;
    if (op() != other.op())
        return false;
    switch (op()) {
    case Op::Const:
        return constant_value() == other.constant_value();
    case Op::Var:
        return true;
    case Op::Inverse:
        return inverter() == other.inverter() && lhs().structurally_equal(other.lhs());
    default:
        break;
    }
    return lhs().structurally_equal(other.lhs()) && rhs().structurally_equal(other.rhs());
}

namespace {

int precedence(const Expr& e) {
    switch (e.op()) {
    case Op::Const:
        if (!e.constant_name().empty())
            return kAtom;
        return std::signbit(e.constant_value()) ? kUnary : kAtom;
    case Op::Add:
    case Op::Sub:
        return kSum;
    case Op::Mul:
    case Op::Div:
        return kProduct;
    case Op::Neg:
        return kUnary;
    case Op::Pow:
        return kPower;
    default:
        return kAtom;
    }
}

std::string print(const Expr& e);

std::string wrap(const Expr& e, int min_prec) {
    std::string s = print(e);
    if (precedence(e) < min_prec)
        return "(" + s + ")";
    return s;
}

// Negative operands right of a binary operator are parenthesized for readability.
std::string wrap_rhs(const Expr& e, int min_prec) {
    return wrap(e, precedence(e) == kUnary ? kPower : min_prec);
}

std::string print(const Expr& e) {
    switch (e.op()) {
    case Op::Const:
        if (!e.constant_name().empty())
            return std::string(e.constant_name());
        return format_number(e.constant_value());
    case Op::Var:
        return "x";
    case Op::Neg:
        return "-" + wrap(e.lhs(), kPower);
    case Op::Add:
        return wrap(e.lhs(), kSum) + "+" + wrap_rhs(e.rhs(), kProduct);
    case Op::Sub:
        return wrap(e.lhs(), kSum) + "-" + wrap_rhs(e.rhs(), kProduct);
    case Op::Mul:
        return wrap(e.lhs(), kProduct) + "*" + wrap_rhs(e.rhs(), kPower);
    case Op::Div:
        return wrap(e.lhs(), kProduct) + "/" + wrap_rhs(e.rhs(), kPower);
    case Op::Pow:
        return wrap(e.lhs(), kAtom) + "^" + wrap_rhs(e.rhs(), kPower);
    case Op::Inverse:
        return "inv[" + e.inverter()->forward().str() + "](" + print(e.lhs()) + ")";
    default:
        return std::string(function_name(e.op())) + "(" + print(e.lhs()) + ")";
    }
}

} // namespace

std::string Expr::str() const {
    return print(*this);
}

Expr operator-(const Expr& a) {
    if (a.is_constant())
        return Expr(-a.constant_value());
    if (a.op() == Op::Neg)
        return a.lhs();
    return Expr::make(Op::Neg, a);
}

namespace {

// Folds a constant subtree, keeping the node when folding would raise.
template <class F>
std::optional<Expr> try_fold(F&& f) {
    try {
        return Expr(f());
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

} // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant())
        if (auto r = try_fold([&] { return apply_binary(Op::Add, a.constant_value(), b.constant_value()); }))
            return *r;
    if (a.is_constant(0.0))
        return b;
    if (b.is_constant(0.0))
        return a;
    return Expr::make(Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant())
        if (auto r = try_fold([&] { return apply_binary(Op::Sub, a.constant_value(), b.constant_value()); }))
            return *r;
    if (b.is_constant(0.0))
        return a;
    if (a.is_constant(0.0))
        return -b;
    return Expr::make(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant())
        if (auto r = try_fold([&] { return apply_binary(Op::Mul, a.constant_value(), b.constant_value()); }))
            return *r;
    if (a.is_constant(0.0) || b.is_constant(0.0))
        return Expr(0.0);
    if (a.is_constant(1.0))
        return b;
    if (b.is_constant(1.0))
        return a;
    if (a.is_constant(-1.0))
        return -b;
    if (b.is_constant(-1.0))
        return -a;
    return Expr::make(Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant())
        if (auto r = try_fold([&] { return apply_binary(Op::Div, a.constant_value(), b.constant_value()); }))
            return *r;
    if (b.is_constant(1.0))
        return a;
    if (a.is_constant(0.0) && !b.is_constant(0.0))
        return Expr(0.0);
    return Expr::make(Op::Div, a, b);
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (base.is_constant() && exponent.is_constant())
        if (auto r = try_fold([&] { return apply_binary(Op::Pow, base.constant_value(), exponent.constant_value()); }))
            return *r;
    if (exponent.is_constant(1.0))
        return base;
    if (exponent.is_constant(0.0))
        return Expr(1.0);
    return Expr::make(Op::Pow, base, exponent);
}

Expr apply(Op fn, const Expr& arg) {
    if (fn == Op::Neg)
        return -arg;
    if (!is_unary(fn))
        throw PreconditionError("apply expects a unary function");
    if (arg.is_constant())
        if (auto r = try_fold([&] { return apply_unary(fn, arg.constant_value()); }))
            return *r;
    return Expr::make(fn, arg);
}

Expr differentiate(const Expr& e) {
    if (!e.depends_on_variable())
        return Expr(0.0);
    const Expr& a = e.lhs();
    const Expr& b = e.rhs();
    switch (e.op()) {
    case Op::Var:
        return Expr(1.0);
    case Op::Neg:
        return -differentiate(a);
    case Op::Add:
        return differentiate(a) + differentiate(b);
    case Op::Sub:
        return differentiate(a) - differentiate(b);
    case Op::Mul:
        return differentiate(a) * b + a * differentiate(b);
    case Op::Div:
        if (!b.depends_on_variable())
            return differentiate(a) / b;
        return (differentiate(a) * b - a * differentiate(b)) / pow(b, Expr(2.0));
    case Op::Pow:
        if (!b.depends_on_variable())
            return b * pow(a, b - Expr(1.0)) * differentiate(a);
        if (!a.depends_on_variable())
            return e * ln(a) * differentiate(b);
        return e * (differentiate(b) * ln(a) + b * differentiate(a) / a);
    case Op::Ln:
        return differentiate(a) / a;
    case Op::Exp:
        return e * differentiate(a);
    case Op::Sin:
        return cos(a) * differentiate(a);
    case Op::Cos:
        return -(sin(a) * differentiate(a));
    case Op::Tan:
        return differentiate(a) / pow(cos(a), Expr(2.0));
    case Op::Sinh:
        return cosh(a) * differentiate(a);
    case Op::Cosh:
        return sinh(a) * differentiate(a);
    case Op::Abs:
        return a / abs(a) * differentiate(a);
    case Op::Inverse: {
        const auto& inv = e.inverter();
        return differentiate(a) / compose(inv->derivative(), Expr::inverse_of(inv, a));
    }
    default:
        break;
    }
    throw Error("unsupported node in differentiate");
}

Expr compose(const Expr& outer, const Expr& inner) {
    if (!outer.depends_on_variable())
        return outer;
    switch (outer.op()) {
    case Op::Var:
        return inner;
    case Op::Inverse:
        return Expr::inverse_of(outer.inverter(), compose(outer.lhs(), inner));
    case Op::Add:
        return compose(outer.lhs(), inner) + compose(outer.rhs(), inner);
    case Op::Sub:
        return compose(outer.lhs(), inner) - compose(outer.rhs(), inner);
    case Op::Mul:
        return compose(outer.lhs(), inner) * compose(outer.rhs(), inner);
    case Op::Div:
        return compose(outer.lhs(), inner) / compose(outer.rhs(), inner);
    case Op::Pow:
        return pow(compose(outer.lhs(), inner), compose(outer.rhs(), inner));
    default:
        return apply(outer.op(), compose(outer.lhs(), inner));
    }
}

std::optional<Expr> closed_form_inverse(const Expr& e) {
    if (e.variable_count() != 1)
        return std::nullopt;
    Expr target = Expr::variable();
    Expr cur = e;
    while (!cur.is_variable()) {
        const Expr& a = cur.lhs();
        const Expr& b = cur.rhs();
        const bool in_a = a.depends_on_variable();
        switch (cur.op()) {
        case Op::Neg:
            target = -target;
            cur = a;
            break;
        case Op::Add:
            target = target - (in_a ? b : a);
            cur = in_a ? a : b;
            break;
        case Op::Sub:
            target = in_a ? target + b : a - target;
            cur = in_a ? a : b;
            break;
        case Op::Mul:
            target = target / (in_a ? b : a);
            cur = in_a ? a : b;
            break;
        case Op::Div:
            target = in_a ? target * b : a / target;
            cur = in_a ? a : b;
            break;
        case Op::Pow:
            if (in_a) {
                if (b.is_constant(0.0))
                    return std::nullopt;
                target = pow(target, Expr(1.0) / b);
                cur = a;
            } else {
                if (!a.is_constant() || a.constant_value() <= 0.0 || a.constant_value() == 1.0)
                    return std::nullopt;
                target = ln(target) / Expr(std::log(a.constant_value()));
                cur = b;
            }
            break;
        case Op::Exp:
            target = ln(target);
            cur = a;
            break;
        case Op::Ln:
            target = exp(target);
            cur = a;
            break;
        case Op::Sinh:
            target = ln(target + sqrt(pow(target, Expr(2.0)) + Expr(1.0)));
            cur = a;
            break;
        case Op::Cosh:
            target = ln(target + sqrt(pow(target, Expr(2.0)) - Expr(1.0)));
            cur = a;
            break;
        case Op::Inverse:
            target = compose(cur.inverter()->forward(), target);
            cur = a;
            break;
        default:
            return std::nullopt;
        }
    }
    return target;
}

namespace {
void require_scale(ScaleShift s) {
    if (s.k == 0.0 || !std::isfinite(s.k) || !std::isfinite(s.C))
        throw PreconditionError("scaleshift needs a finite nonzero scale");
}
} // namespace

Expr v_scaleshift(const Expr& f, ScaleShift s) {
    require_scale(s);
    return Expr(s.k) * f + Expr(s.C);
}

Expr h_scaleshift(const Expr& f, ScaleShift s) {
    require_scale(s);
    return compose(f, (Expr::variable() - Expr(s.C)) / Expr(s.k));
}

Expr hv_scaleshift(const Expr& f, ScaleShift horizontal, ScaleShift vertical) {
    return v_scaleshift(h_scaleshift(f, horizontal), vertical);
}

Interval scaleshift_interval(const Interval& d, ScaleShift s) {
    require_scale(s);
    const double lo = s.k * d.lo() + s.C;
    const double hi = s.k * d.hi() + s.C;
    if (s.k > 0.0)
        return {lo, hi, d.lo_open(), d.hi_open()};
    return {hi, lo, d.hi_open(), d.lo_open()};
}

} // namespace isomean
