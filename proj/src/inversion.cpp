#include "isomean/inversion.hpp"

#include "isomean/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isomean {

namespace {

std::string describe_failure(const Expr& e, const Interval& d, const Monotonicity& m) {
    std::ostringstream os;
    os.precision(17);
    os << e.str() << " is not strictly monotone on " << d.to_string() << ": " << to_string(m.cls);
    if (m.witness)
        os << " (slope sign reversal between " << m.witness->first << " and " << m.witness->second << ")";
    if (!m.note.empty())
        os << "; " << m.note;
    return os.str();
}

} // namespace

std::shared_ptr<const MonotoneInverter> MonotoneInverter::create(const Expr& forward, const Interval& domain) {
    if (domain.degenerate())
        throw PreconditionError("a dimensional mapping needs a non-degenerate domain");
    std::shared_ptr<MonotoneInverter> g(new MonotoneInverter());
    g->forward_ = forward;
    g->derivative_ = differentiate(forward);
    g->domain_ = domain;
    g->monotonicity_ = classify_monotonicity(forward, g->derivative_, domain);
    if (!g->monotonicity_.strict())
        throw NotMonotoneError(describe_failure(forward, domain, g->monotonicity_));
    g->increasing_ = g->monotonicity_.increasing();

    const double at_lo = endpoint_limit(forward, domain, Side::Lower);
    const double at_hi = endpoint_limit(forward, domain, Side::Upper);
    if (g->increasing_)
        g->image_ = Interval(at_lo, at_hi, domain.lo_open(), domain.hi_open());
    else
        g->image_ = Interval(at_hi, at_lo, domain.hi_open(), domain.lo_open());

    for (double x : sample_points(domain)) {
        try {
            const double v = forward(x);
            g->xs_.push_back(x);
            g->vs_.push_back(v);
        } catch (const DomainError&) {
        }
    }

    if (auto c = closed_form_inverse(forward)) {
        bool ok = true;
        const std::size_t n = g->xs_.size();
        const std::size_t stride = std::max<std::size_t>(1, n / 32);
        for (std::size_t i = 0; i < n && ok; i += stride) {
            const double x = g->xs_[i];
            const double v = g->vs_[i];
            const bool flat = (i > 0 && g->vs_[i - 1] == v) || (i + 1 < n && g->vs_[i + 1] == v);
            if (flat)
                continue;
            try {
                const double xr = (*c)(v);
                ok = std::abs(xr - x) <= 1e-9 * std::max(1.0, std::abs(x));
            } catch (const DomainError&) {
                ok = false;
            }
        }
        if (ok)
            g->closed_ = std::move(c);
    }
    return g;
}

std::shared_ptr<const MonotoneInverter>
MonotoneInverter::inverse_of(const std::shared_ptr<const MonotoneInverter>& g) {
    std::shared_ptr<MonotoneInverter> inv(new MonotoneInverter());
    inv->forward_ = g->inverse_expr();
    inv->derivative_ = differentiate(inv->forward_);
    inv->domain_ = g->image_;
    inv->image_ = g->domain_;
    inv->increasing_ = g->increasing_;
    inv->monotonicity_ = g->monotonicity_;
    inv->closed_ = g->forward_;
    inv->xs_ = g->vs_;
    inv->vs_ = g->xs_;
    if (!inv->increasing_) {
        std::reverse(inv->xs_.begin(), inv->xs_.end());
        std::reverse(inv->vs_.begin(), inv->vs_.end());
    }
    return inv;
}

Expr MonotoneInverter::inverse_expr() const {
    if (closed_)
        return *closed_;
    return Expr::inverse_of(shared_from_this(), Expr::variable());
}

double MonotoneInverter::residual_tolerance(double u) const {
    return std::max(1e-12, 1e-12 * std::abs(u));
}

double MonotoneInverter::solve(double u) const {
    if (!image_.contains(u, 1e-12)) {
        std::ostringstream os;
        os.precision(17);
        os << "value " << u << " outside the image " << image_.to_string() << " of " << forward_.str();
        throw DomainError(DomainError::Kind::OutOfDomain, os.str());
    }
    if (closed_) {
        try {
            const double x = (*closed_)(u);
            if (domain_.contains(x, 1e-9))
                return std::clamp(x, domain_.lo(), domain_.hi());
        } catch (const DomainError&) {
        }
    }
    return solve_numeric(u);
}

double MonotoneInverter::solve_numeric(double u) const {
    const double sgn = increasing_ ? 1.0 : -1.0;
    const double ku = sgn * u;
    // Key is increasing in x. Points beyond the evaluable region take the
    // limit on their side.
    const auto key = [&](double x, double outside) {
        try {
            return sgn * forward_(x);
        } catch (const DomainError&) {
            return outside;
        }
    };

    const std::size_t n = xs_.size();
    if (n == 0)
        throw DomainError(DomainError::Kind::OutOfDomain, "no evaluable samples of " + forward_.str());
    std::size_t i = 0;
    while (i < n && sgn * vs_[i] < ku)
        ++i;
    if (i < n && sgn * vs_[i] == ku)
        return xs_[i];

    double xl, xr;
    if (i == 0) {
        xr = xs_[0];
        if (std::isfinite(domain_.lo())) {
            xl = domain_.lo();
        } else {
            double step = std::max(1.0, std::abs(xr));
            xl = xr - step;
            while (key(xl, -kInf) > ku && std::isfinite(xl)) {
                xr = xl;
                step *= 2.0;
                xl = xr - step;
            }
        }
    } else if (i == n) {
        xl = xs_[n - 1];
        if (std::isfinite(domain_.hi())) {
            xr = domain_.hi();
        } else {
            double step = std::max(1.0, std::abs(xl));
            xr = xl + step;
            while (key(xr, kInf) < ku && std::isfinite(xr)) {
                xl = xr;
                step *= 2.0;
                xr = xl + step;
            }
        }
    } else {
        xl = xs_[i - 1];
        xr = xs_[i];
    }

    while (xr - xl > 1e-8 * std::max(1.0, std::abs(0.5 * (xl + xr)))) {
        const double xm = 0.5 * (xl + xr);
        if (key(xm, kInf) < ku)
            xl = xm;
        else
            xr = xm;
    }

    const double tol = residual_tolerance(u);
    double x = 0.5 * (xl + xr);
    double best = x;
    double best_res = kInf;
    for (int iter = 0; iter < 100; ++iter) {
        double fx;
        try {
            fx = forward_(x) - u;
        } catch (const DomainError&) {
            x = 0.5 * (xl + xr);
            continue;
        }
        if (std::abs(fx) < best_res) {
            best_res = std::abs(fx);
            best = x;
        }
        if (best_res <= tol)
            return best;
        if (sgn * fx < 0.0)
            xl = x;
        else
            xr = x;
        if (!(xr > xl) || std::nextafter(xl, xr) >= xr)
            break;
        double next = 0.5 * (xl + xr);
        try {
            const double dg = derivative_(x);
            const double newton = x - fx / dg;
            if (std::isfinite(newton) && newton > xl && newton < xr)
                next = newton;
        } catch (const DomainError&) {
        }
        x = next;
    }
    return best;
}

} // namespace isomean
