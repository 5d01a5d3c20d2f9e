#include "isomean/bivariate.hpp"
#include "isomean/classify.hpp"
#include "isomean/compare.hpp"
#include "isomean/error.hpp"
#include "isomean/funmean.hpp"
#include "isomean/nummean.hpp"
#include "isomean/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

using namespace isomean;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kParse = 2, kPrecondition = 3, kUndecided = 4, kDivergent = 5, kUsage = 64 };

// Output values keep their full binary precision.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;
using Row = std::vector<std::pair<std::string, Cell>>;

std::string shortest(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "";
            else if constexpr (std::is_same_v<T, double>)
                return shortest(v);
            else if constexpr (std::is_same_v<T, long long>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else
                return v;
        },
        c);
}

ojson to_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> ojson {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else
                return v;
        },
        c);
}

ojson to_json(const Row& row) {
    ojson o = ojson::object();
    for (const auto& [k, v] : row)
        o[k] = to_json(v);
    return o;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

void csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            line += ',';
        line += csv_field(fields[i]);
    }
    std::cout << line << "\r\n";
}

void emit_rows(const std::vector<std::string>& header, const std::vector<Row>& rows, const std::string& format) {
    if (format == "json") {
        ojson arr = ojson::array();
        for (const Row& r : rows)
            arr.push_back(to_json(r));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        csv_line(header);
        for (const Row& r : rows) {
            std::vector<std::string> fields;
            for (const auto& [k, v] : r)
                fields.push_back(text(v));
            csv_line(fields);
        }
        return;
    }
    for (const Row& r : rows) {
        std::string line;
        for (const auto& [k, v] : r) {
            if (!line.empty())
                line += "  ";
            line += k + "=" + text(v);
        }
        std::cout << line << "\n";
    }
}

void emit(const Row& row, const std::string& format, const ojson& extra = ojson::object()) {
    if (format == "json") {
        ojson o = to_json(row);
        for (auto it = extra.begin(); it != extra.end(); ++it)
            o[it.key()] = it.value();
        std::cout << o.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::vector<std::string> header;
        std::vector<std::string> fields;
        for (const auto& [k, v] : row) {
            header.push_back(k);
            fields.push_back(text(v));
        }
        csv_line(header);
        csv_line(fields);
        return;
    }
    for (const auto& [k, v] : row)
        std::cout << k << ": " << text(v) << "\n";
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        if (it.value().is_array()) {
            for (const auto& item : it.value())
                std::cout << it.key() << ": " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
        } else {
            std::cout << it.key() << ": " << it.value().dump() << "\n";
        }
    }
}

// Interval endpoint: a constant expression such as "pi/2", or +-inf.
double endpoint(const std::string& s) {
    if (s == "inf" || s == "+inf")
        return kInf;
    if (s == "-inf")
        return -kInf;
    const Expr e = parse(s);
    if (e.depends_on_variable())
        throw ParseError(0, "endpoint '" + s + "' must be a constant expression");
    return e(0.0);
}

Interval domain_of(double a, double b) {
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    return Interval(lo, hi, std::isinf(lo), std::isinf(hi));
}

// The mapping on `region`, closing as many ends as evaluation allows.
GeneratorMap map_on(const Expr& e, const Interval& region) {
    const double lo = region.lo();
    const double hi = region.hi();
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    std::optional<Error> first;
    for (int open_mask = 0; open_mask < 4; ++open_mask) {
        const bool lo_open = lo_inf || region.lo_open() || (open_mask & 1);
        const bool hi_open = hi_inf || region.hi_open() || (open_mask & 2);
        try {
            return GeneratorMap(e, Interval(lo, hi, lo_open, hi_open));
        } catch (const NotMonotoneError&) {
            throw;
        } catch (const Error& err) {
            if (!first)
                first = err;
        }
    }
    throw PreconditionError("cannot build the mapping " + e.str() + " on " + region.to_string() +
                            (first ? std::string(": ") + first->what() : std::string()));
}

Interval range_of(const Function& f, const Interval& d) {
    return estimate_range(f, Interval(d.lo(), d.hi(), true, true)).hull();
}

struct Exprs {
    std::string f, g, h, G, H;
};

MeanOptions mean_options(const std::optional<double>& tol) {
    MeanOptions mo;
    if (tol) {
        mo.quad.abs_tol = *tol;
        mo.quad.rel_tol = *tol;
    }
    return mo;
}

Cell optional_text(const std::string& s) {
    return s.empty() ? Cell{} : Cell{s};
}

// ----- mean -----

struct MeanArgs {
    std::string cls;
    Exprs e;
    std::string a, b;
    std::optional<double> p;
};

Row compute_mean(const MeanArgs& m, double a, double b, const MeanOptions& mo) {
    std::string cls = m.cls;
    std::optional<double> p = m.p;
    if (cls.rfind("power:", 0) == 0) {
        p = endpoint(cls.substr(6));
        cls = "power";
    }
    const auto need = [&](const std::string& s, const char* name) {
        if (s.empty())
            throw PreconditionError(std::string("class ") + cls + " needs --" + name);
        return parse(s);
    };
    const Interval d = domain_of(a, b);
    Row row{{"class", m.cls}, {"f", optional_text(m.e.f)}, {"g", optional_text(m.e.g)},
            {"h", optional_text(m.e.h)}, {"a", a}, {"b", b}};
    const auto finish = [&](const MeanResult& r) {
        row.emplace_back("value", r.value);
        row.emplace_back("err", r.abs_error);
        row.emplace_back("method", to_string(r.method));
        return row;
    };
    if (cls == "V") {
        const Expr g = need(m.e.g, "g");
        const Expr h = need(m.e.h, "h");
        if (d.degenerate())
            return finish(MeanResult{a, 0.0, MeanMethod::ClosedForm});
        return finish(class_V_mean(d, map_on(g, d), map_on(h, d), mo));
    }
    const Function f(need(m.e.f, "f"));
    if (d.degenerate()) {
        for (const std::string* s : {&m.e.g, &m.e.h})
            if (!s->empty())
                parse(*s);
        return finish(MeanResult{f(a), 0.0, MeanMethod::ClosedForm});
    }
    if (cls == "I")
        return finish(class_I_mean(f, d, map_on(need(m.e.h, "h"), range_of(f, d)), mo));
    if (cls == "II")
        return finish(class_II_mean(f, d, map_on(need(m.e.g, "g"), d), mo));
    if (cls == "III") {
        const Expr g = need(m.e.g, "g");
        const Interval r = range_of(f, d);
        const Interval both(std::min(d.lo(), r.lo()), std::max(d.hi(), r.hi()), d.lo() <= r.lo() ? d.lo_open() : r.lo_open(),
                            d.hi() >= r.hi() ? d.hi_open() : r.hi_open());
        return finish(class_III_mean(f, d, map_on(g, both), mo));
    }
    if (cls == "IV")
        return finish(
            dvi_mean({f, d, Frame({map_on(need(m.e.g, "g"), d), map_on(need(m.e.h, "h"), range_of(f, d))})}, mo));
    if (cls == "VI" || cls == "arithmetic")
        return finish(arithmetic_mean(f, d, mo));
    if (cls == "VII")
        return finish(class_VII_mean(f.expr(), d, mo));
    if (cls == "geometric")
        return finish(geometric_mean(f, d, mo));
    if (cls == "harmonic")
        return finish(harmonic_mean(f, d, mo));
    if (cls == "elastic")
        return finish(elastic_mean(f, d, mo));
    if (cls == "power") {
        if (!p)
            throw PreconditionError("class power needs an order, as power:p or --p");
        return finish(power_mean(f, d, *p, mo));
    }
    throw PreconditionError("unknown mean class '" + m.cls + "'");
}

// ----- compare -----

struct CompareArgs {
    Exprs e;
    std::string a, b;
    bool require_verdict = false;
};

ojson verdict_extra(const Verdict& v) {
    ojson extra = ojson::object();
    extra["corroborated_by"] = v.corroborated_by;
    extra["notes"] = v.notes;
    return extra;
}

Row verdict_row(const Verdict& v) {
    return {{"verdict", to_string(v.relation)},
            {"criterion", optional_text(v.criterion)},
            {"case", static_cast<long long>(v.case_number)},
            {"left", v.left ? Cell{*v.left} : Cell{}},
            {"right", v.right ? Cell{*v.right} : Cell{}},
            {"tolerance", v.tolerance}};
}

int cmd_compare(const CompareArgs& c, const std::string& format, const MeanOptions& mo) {
    const Exprs& e = c.e;
    const double a = endpoint(c.a);
    const double b = endpoint(c.b);
    const Interval d = domain_of(a, b);
    Verdict v;
    Row head;
    if (e.f.empty()) {
        if (e.g.empty() || e.G.empty())
            throw PreconditionError("comparing number means needs --g and --G");
        const Expr g = parse(e.g);
        const Expr G = parse(e.G);
        v = compare_number_means(map_on(g, d), map_on(G, d), d);
        head = {{"scenario", std::string("number-means")}, {"g", e.g}, {"G", e.G}, {"a", a}, {"b", b}};
    } else {
        const Expr f = parse(e.f);
        const Expr g = parse(e.g.empty() ? "x" : e.g);
        const Expr h = parse(e.h.empty() ? "x" : e.h);
        const Expr G = parse(e.G.empty() ? "x" : e.G);
        const Expr H = parse(e.H.empty() ? "x" : e.H);
        const Function fn(f);
        const Interval r = d.degenerate() ? Interval(fn(a), fn(a)) : range_of(fn, d);
        const auto on_d = [&](const Expr& x) { return d.degenerate() ? GeneratorMap::identity() : map_on(x, d); };
        const auto on_r = [&](const Expr& x) { return r.degenerate() ? GeneratorMap::identity() : map_on(x, r); };
        const ComparisonScenario s = ComparisonScenario::make(fn, d, Frame({on_d(g), on_r(h)}), Frame({on_d(G), on_r(H)}));
        v = compare_function_means(s, mo);
        head = {{"scenario", to_string(s.kind)}, {"f", e.f}, {"g", g.str()}, {"h", h.str()}, {"G", G.str()},
                {"H", H.str()}, {"a", a}, {"b", b}};
    }
    Row row = head;
    for (auto& cell : verdict_row(v))
        row.push_back(std::move(cell));
    emit(row, format, format == "csv" ? ojson::object() : verdict_extra(v));
    if (!v.decided() && c.require_verdict)
        return kUndecided;
    return kOk;
}

// ----- stolarsky / cauchy -----

Row stolarsky_row(double p, double q, double a, double b) {
    const StolarskyBranch br = a == b ? StolarskyBranch::Degenerate : stolarsky_branch(p, q);
    return {{"p", p}, {"q", q}, {"a", a}, {"b", b}, {"branch", to_string(br)}, {"value", quasi_stolarsky({p, q, a, b})}};
}

int cmd_cauchy(const Exprs& e, double a, double b, const std::string& format) {
    if (e.f.empty() || e.g.empty())
        throw PreconditionError("cauchy needs --f and --g");
    const Expr f = parse(e.f);
    const Expr g = parse(e.g);
    Row row{{"f", e.f}, {"g", e.g}, {"a", a}, {"b", b}};
    double value = 0.0;
    try {
        value = cauchy_mean_value(f, g, a, b);
    } catch (const PreconditionError& err) {
        row.emplace_back("invertible", false);
        row.emplace_back("value", Cell{});
        row.emplace_back("error", std::string(err.what()));
        emit(row, format);
        return kPrecondition;
    }
    row.emplace_back("invertible", true);
    row.emplace_back("value", value);
    if (a != b) {
        try {
            const Interval d = domain_of(a, b);
            const CauchyToClassV cv = cauchy_to_classV(f, map_on(g, d), d);
            row.emplace_back("h", cv.h.expr().str());
            row.emplace_back("class_v", cv.class_v);
            row.emplace_back("residual", cv.residual);
        } catch (const Error&) {
        }
    }
    emit(row, format);
    return kOk;
}

// ----- sweep -----

struct Axis {
    std::vector<std::string> names;
    std::vector<double> values;
};

Axis parse_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ParseError(0, "sweep variable '" + spec + "' must look like name=lo:hi:n[:log]");
    Axis ax;
    std::string names = spec.substr(0, eq);
    for (std::size_t pos = 0; pos <= names.size();) {
        const auto comma = names.find(',', pos);
        const std::string n = names.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (n.empty())
            throw ParseError(0, "empty sweep variable name in '" + spec + "'");
        ax.names.push_back(n);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    std::vector<std::string> parts;
    const std::string range = spec.substr(eq + 1);
    for (std::size_t pos = 0;;) {
        const auto colon = range.find(':', pos);
        parts.push_back(range.substr(pos, colon == std::string::npos ? std::string::npos : colon - pos));
        if (colon == std::string::npos)
            break;
        pos = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin"))
        throw ParseError(0, "sweep range '" + range + "' must look like lo:hi:n[:log]");
    const double lo = endpoint(parts[0]);
    const double hi = endpoint(parts[1]);
    long long n = 0;
    const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
    if (res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size() || n < 0)
        throw ParseError(0, "sweep step count '" + parts[2] + "' must be a non-negative integer");
    const bool log = parts.size() == 4 && parts[3] == "log";
    if (log && !(lo > 0 && hi > 0))
        throw PreconditionError("log-spaced sweeps need positive bounds");
    for (long long i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        double v = log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
        if (i == n - 1 && n > 1)
            v = hi;
        ax.values.push_back(v);
    }
    return ax;
}

struct SweepArgs {
    std::string quantity;
    std::vector<std::string> vars;
    std::vector<std::string> sets;
    MeanArgs mean;
};

std::vector<std::string> quantity_params(const std::string& q) {
    if (q == "sigma-ge")
        return {"r", "p"};
    if (q == "stolarsky")
        return {"p", "q", "a", "b"};
    if (q == "s-root")
        return {"p"};
    if (q == "mean")
        return {"a", "b", "p"};
    throw PreconditionError("unknown sweep quantity '" + q + "' (sigma-ge, stolarsky, s-root, mean)");
}

std::vector<std::string> quantity_outputs(const std::string& q) {
    if (q == "sigma-ge")
        return {"sigma"};
    if (q == "stolarsky")
        return {"branch", "value"};
    if (q == "s-root")
        return {"root"};
    return {"value", "err", "method"};
}

Row sweep_point(const SweepArgs& s, const std::map<std::string, double>& at, const MeanOptions& mo) {
    const auto get = [&](const char* n) {
        const auto it = at.find(n);
        if (it == at.end())
            throw PreconditionError(std::string("sweep parameter '") + n + "' is not set");
        return it->second;
    };
    if (s.quantity == "sigma-ge")
        return {{"sigma", sigma_GE(get("r"), get("p"))}};
    if (s.quantity == "stolarsky") {
        const Row r = stolarsky_row(get("p"), get("q"), get("a"), get("b"));
        return {r[4], r[5]};
    }
    if (s.quantity == "s-root") {
        const auto root = s_second_root(get("p"));
        return {{"root", root ? Cell{*root} : Cell{}}};
    }
    MeanArgs m = s.mean;
    if (at.count("p"))
        m.p = at.at("p");
    const Row r = compute_mean(m, get("a"), get("b"), mo);
    return {r[6], r[7], r[8]};
}

int cmd_sweep(const SweepArgs& s, const std::string& format, const MeanOptions& mo) {
    const std::vector<std::string> params = quantity_params(s.quantity);
    if (s.vars.size() > 2)
        throw PreconditionError("sweep takes one or two --var axes");
    std::vector<Axis> axes;
    for (const std::string& v : s.vars)
        axes.push_back(parse_axis(v));
    std::map<std::string, double> fixed;
    for (const std::string& kv : s.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ParseError(0, "--set '" + kv + "' must look like name=value");
        fixed[kv.substr(0, eq)] = endpoint(kv.substr(eq + 1));
    }
    std::vector<std::string> swept;
    for (const Axis& ax : axes)
        for (const std::string& n : ax.names) {
            if (std::find(params.begin(), params.end(), n) == params.end())
                throw PreconditionError("'" + n + "' is not a parameter of " + s.quantity);
            swept.push_back(n);
        }
    for (const auto& [k, v] : fixed)
        if (std::find(params.begin(), params.end(), k) == params.end())
            throw PreconditionError("'" + k + "' is not a parameter of " + s.quantity);
    if (s.quantity == "mean" && !s.mean.cls.empty())
        for (const std::string* e : {&s.mean.e.f, &s.mean.e.g, &s.mean.e.h})
            if (!e->empty())
                parse(*e);

    std::vector<std::string> header;
    for (const std::string& p : params)
        if (std::find(swept.begin(), swept.end(), p) != swept.end() || fixed.count(p))
            header.push_back(p);
    for (const std::string& o : quantity_outputs(s.quantity))
        header.push_back(o);
    header.push_back("error");

    std::vector<std::map<std::string, double>> points;
    const std::size_t n0 = axes.empty() ? 1 : axes[0].values.size();
    const std::size_t n1 = axes.size() < 2 ? 1 : axes[1].values.size();
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
            std::map<std::string, double> at = fixed;
            if (!axes.empty())
                for (const std::string& n : axes[0].names)
                    at[n] = axes[0].values[i];
            if (axes.size() > 1)
                for (const std::string& n : axes[1].names)
                    at[n] = axes[1].values[j];
            points.push_back(std::move(at));
        }

    std::vector<Row> rows(points.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < points.size(); k = next++) {
            Row row;
            for (const std::string& h : header)
                if (points[k].count(h))
                    row.emplace_back(h, points[k].at(h));
            std::string error;
            Row out;
            try {
                out = sweep_point(s, points[k], mo);
            } catch (const std::exception& e) {
                error = e.what();
            }
            for (const std::string& o : quantity_outputs(s.quantity)) {
                const auto it = std::find_if(out.begin(), out.end(), [&](const auto& c) { return c.first == o; });
                row.emplace_back(o, it == out.end() ? Cell{} : it->second);
            }
            row.emplace_back("error", optional_text(error));
            rows[k] = std::move(row);
        }
    };
    const unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, points.size()); ++t)
        pool.emplace_back(worker);
    pool.clear();
    emit_rows(header, rows, format);
    return kOk;
}

// ----- verify -----

int cmd_verify(const std::vector<std::string>& only, const std::optional<double>& tol, const std::string& format) {
    const VerifyReport report = run_verification({only, tol});
    std::vector<Row> rows;
    for (const CheckResult& c : report.checks)
        rows.push_back({{"name", c.name},
                        {"group", c.group},
                        {"criterion", static_cast<long long>(c.criterion)},
                        {"passed", c.passed},
                        {"residual", c.residual},
                        {"tolerance", c.tolerance},
                        {"seconds", c.seconds},
                        {"detail", c.detail}});
    if (format == "json") {
        ojson o = ojson::object();
        o["passed"] = report.passed();
        o["checks"] = ojson::array();
        for (const Row& r : rows)
            o["checks"].push_back(to_json(r));
        std::cout << o.dump(2) << "\n";
    } else {
        emit_rows({"name", "group", "criterion", "passed", "residual", "tolerance", "seconds", "detail"}, rows,
                  format);
    }
    return report.passed() ? kOk : kFailed;
}

int report_error(const char* kind, const std::exception& e, int code) {
    std::cerr << "isomean: " << kind << ": " << e.what() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isomorphic means of numbers and functions: compute, compare, sweep and verify."};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    std::string format = "json";
    std::optional<double> tol;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
        sub->add_option("--tol", tol, "Quadrature tolerance override (at least 1e-14)")
            ->check(CLI::Range(1e-14, 1.0));
    };

    MeanArgs mean;
    mean.a = "0";
    mean.b = "1";
    CLI::App* mean_cmd = app.add_subcommand("mean", "Compute a mean of a function on [a, b]");
    mean_cmd->add_option("--class", mean.cls,
                         "I, II, III, IV, V, VI, VII, arithmetic, geometric, harmonic, elastic or power:p")
        ->required();
    mean_cmd->add_option("--f", mean.e.f, "Function f(x)");
    mean_cmd->add_option("--g", mean.e.g, "Independent-variable mapping g(x)");
    mean_cmd->add_option("--h", mean.e.h, "Dependent-variable mapping h(y)");
    mean_cmd->add_option("-a,--a", mean.a, "Left endpoint (constant expression)");
    mean_cmd->add_option("-b,--b", mean.b, "Right endpoint (constant expression)");
    mean_cmd->add_option("-p,--p", mean.p, "Order of the power mean");
    add_common(mean_cmd);

    CompareArgs cmp;
    cmp.a = "0";
    cmp.b = "1";
    CLI::App* cmp_cmd = app.add_subcommand(
        "compare", "Compare M_f|g,h with M_f|G,H, or the number means of g and G when --f is absent");
    cmp_cmd->add_option("--f", cmp.e.f, "Function f(x)");
    cmp_cmd->add_option("--g", cmp.e.g, "Left independent-variable mapping (default x)");
    cmp_cmd->add_option("--h", cmp.e.h, "Left dependent-variable mapping (default y)");
    cmp_cmd->add_option("--G", cmp.e.G, "Right independent-variable mapping (default x)");
    cmp_cmd->add_option("--H", cmp.e.H, "Right dependent-variable mapping (default y)");
    cmp_cmd->add_option("-a,--a", cmp.a, "Left endpoint");
    cmp_cmd->add_option("-b,--b", cmp.b, "Right endpoint");
    cmp_cmd->add_flag("--require-verdict", cmp.require_verdict, "Exit 4 when the verdict is undecided");
    add_common(cmp_cmd);

    double sp = 1.0;
    double sq = 1.0;
    std::string sa = "1";
    std::string sb = "2";
    CLI::App* sto_cmd = app.add_subcommand("stolarsky", "Quasi-Stolarsky mean of a and b");
    sto_cmd->add_option("-p,--p", sp, "Order p");
    sto_cmd->add_option("-q,--q", sq, "Order q");
    sto_cmd->add_option("-a,--a", sa, "First argument");
    sto_cmd->add_option("-b,--b", sb, "Second argument");
    add_common(sto_cmd);

    Exprs ce;
    std::string ca = "1";
    std::string cb = "2";
    CLI::App* cau_cmd = app.add_subcommand("cauchy", "Cauchy mean value of f and g on [a, b]");
    cau_cmd->add_option("--f", ce.f, "Function f(x)")->required();
    cau_cmd->add_option("--g", ce.g, "Function g(x)")->required();
    cau_cmd->add_option("-a,--a", ca, "Left endpoint");
    cau_cmd->add_option("-b,--b", cb, "Right endpoint");
    add_common(cau_cmd);

    SweepArgs sw;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate a quantity over a parameter grid");
    sweep_cmd->add_option("quantity", sw.quantity, "sigma-ge, stolarsky, s-root or mean")->required();
    sweep_cmd->add_option("--var", sw.vars, "Swept parameter(s): name[,name]=lo:hi:n[:log]");
    sweep_cmd->add_option("--set", sw.sets, "Fixed parameter: name=value");
    sweep_cmd->add_option("--class", sw.mean.cls, "Mean class for the mean quantity");
    sweep_cmd->add_option("--f", sw.mean.e.f, "Function f(x)");
    sweep_cmd->add_option("--g", sw.mean.e.g, "Mapping g(x)");
    sweep_cmd->add_option("--h", sw.mean.e.h, "Mapping h(y)");
    add_common(sweep_cmd);

    std::vector<std::string> only;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the built-in golden checks");
    verify_cmd->add_option("--only", only, "Groups or check names to run");
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const MeanOptions mo = mean_options(tol);
    try {
        if (*mean_cmd) {
            for (const std::string* s : {&mean.e.f, &mean.e.g, &mean.e.h})
                if (!s->empty())
                    parse(*s);
            const double a = endpoint(mean.a);
            const double b = endpoint(mean.b);
            emit(compute_mean(mean, a, b, mo), format);
            return kOk;
        }
        if (*cmp_cmd) {
            for (const std::string* s : {&cmp.e.f, &cmp.e.g, &cmp.e.h, &cmp.e.G, &cmp.e.H})
                if (!s->empty())
                    parse(*s);
            return cmd_compare(cmp, format, mo);
        }
        if (*sto_cmd) {
            emit(stolarsky_row(sp, sq, endpoint(sa), endpoint(sb)), format);
            return kOk;
        }
        if (*cau_cmd) {
            parse(ce.f);
            parse(ce.g);
            return cmd_cauchy(ce, endpoint(ca), endpoint(cb), format);
        }
        if (*sweep_cmd) {
            if (sw.quantity == "mean" && sw.mean.cls.empty())
                throw PreconditionError("sweeping a mean needs --class");
            return cmd_sweep(sw, format, mo);
        }
        if (*verify_cmd)
            return cmd_verify(only, tol, format);
    } catch (const ParseError& e) {
        return report_error("parse error", e, kParse);
    } catch (const DivergenceError& e) {
        return report_error("divergent integral", e, kDivergent);
    } catch (const ContradictionError& e) {
        return report_error("contradiction", e, kFailed);
    } catch (const PreconditionError& e) {
        return report_error("precondition", e, kPrecondition);
    } catch (const DomainError& e) {
        return report_error("domain", e, kPrecondition);
    } catch (const Error& e) {
        return report_error("error", e, kFailed);
    }
    return kUsage;
}
