#include "isomean/quadrature.hpp"

#include "isomean/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace isomean {

namespace {

// Kronrod 21-point abscissae (positive half) and weights, with the embedded
// 10-point Gauss weights on the odd-indexed nodes.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000,
};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525612016, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821,
};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697, 0.219086362515982043995534934228163,
    0.269266719309996355091226921569469, 0.295524224714752870173892994651338,
};

struct Segment {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
};

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

Segment gk21(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    double fv1[10];
    double fv2[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1)
            gauss += kWg[j / 2] * (f1 + f2);
    }
    // Error estimate in the style of QUADPACK's qk21.
    const double mean = 0.5 * kronrod;
    double asc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j)
        asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    double err = std::abs((kronrod - gauss) * h);
    const double resasc = asc * std::abs(h);
    const double resabs = abs_sum * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    return {a, b, kronrod * h, err};
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

QuadResult integrate_finite(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt) {
    QuadResult res;
    if (a == b)
        return {0.0, 0.0, 0, 0, true};
    const std::size_t cap = opt.max_subdivisions ? opt.max_subdivisions : default_max_subdivisions();

    std::priority_queue<Segment, std::vector<Segment>, ByError> open;
    std::vector<Segment> done; // too narrow to split further
    Segment first = gk21(f, a, b);
    res.evaluations = 21;
    double total = first.value;
    double total_err = first.error;
    open.push(first);
    std::size_t count = 1;
    double done_err = 0.0;

    const auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (!open.empty() && total_err > tolerance() && count < cap) {
        Segment s = open.top();
        open.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b) || std::abs(s.b - s.a) <= 1e-15 * std::max(std::abs(s.a), std::abs(s.b))) {
            done.push_back(s);
            done_err += s.error;
            if (open.empty() || done_err > tolerance())
                break;
            continue;
        }
        Segment l = gk21(f, s.a, m);
        Segment r = gk21(f, m, s.b);
        res.evaluations += 42;
        total += l.value + r.value - s.value;
        total_err += l.error + r.error - s.error;
        open.push(l);
        open.push(r);
        ++count;
    }

    std::vector<Segment> all = std::move(done);
    while (!open.empty()) {
        all.push_back(open.top());
        open.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    std::vector<double> values(all.size());
    std::vector<double> errors(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        values[i] = all[i].value;
        errors[i] = all[i].error;
    }
    res.value = pairwise_sum(values, 0, values.size());
    res.error = pairwise_sum(errors, 0, errors.size());
    res.subdivisions = count;
    res.converged = res.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(res.value));
    return res;
}

} // namespace

std::size_t default_max_subdivisions() {
    if (const char* env = std::getenv("ISOMEAN_MAX_SUBDIV")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 1000000;
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt) {
    if (std::isnan(a) || std::isnan(b))
        throw PreconditionError("integration limit is NaN");
    if (a > b) {
        QuadResult r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (!lo_inf && !hi_inf)
        return integrate_finite(f, a, b, opt);
    if (lo_inf && hi_inf) {
        const auto g = [&](double t) {
            const double q = 1.0 - t * t;
            return f(t / q) * (1.0 + t * t) / (q * q);
        };
        return integrate_finite(g, -1.0, 1.0, opt);
    }
    if (hi_inf) {
        const auto g = [&](double s) {
            const double q = 1.0 - s;
            return f(a + s / q) / (q * q);
        };
        return integrate_finite(g, 0.0, 1.0, opt);
    }
    const auto g = [&](double s) {
        const double q = 1.0 - s;
        return f(b - s / q) / (q * q);
    };
    return integrate_finite(g, 0.0, 1.0, opt);
}

} // namespace isomean
