#include "isomean/bivariate.hpp"
#include "isomean/compare.hpp"
#include "isomean/error.hpp"
#include "isomean/funmean.hpp"
#include "isomean/nummean.hpp"
#include "isomean/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace isomean;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Isomorphic means of numbers and functions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    auto pre = py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<NotMonotoneError>(m, "NotMonotoneError", pre.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
    py::register_exception<ContradictionError>(m, "ContradictionError", base.ptr());

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double, bool, bool>(), py::arg("lo"), py::arg("hi"), py::arg("lo_open") = false,
             py::arg("hi_open") = false)
        .def_static("open", &Interval::open)
        .def_static("closed", &Interval::closed)
        .def_static("positive", &Interval::positive)
        .def_static("real_line", &Interval::real_line)
        .def_property_readonly("lo", &Interval::lo)
        .def_property_readonly("hi", &Interval::hi)
        .def_property_readonly("lo_open", &Interval::lo_open)
        .def_property_readonly("hi_open", &Interval::hi_open)
        .def("__repr__", &Interval::to_string);

    py::class_<Expr>(m, "Expr")
        .def(py::init(&parse), py::arg("text"))
        .def("__call__", &Expr::operator())
        .def("derivative", &differentiate)
        .def("__str__", &Expr::str)
        .def("__repr__", [](const Expr& e) { return "Expr('" + e.str() + "')"; });
    m.def("parse", &parse, py::arg("text"));

    py::class_<Function>(m, "Function")
        .def(py::init<Expr>())
        .def(py::init([](const std::string& s) { return Function(parse(s)); }))
        .def(py::init<std::vector<double>, std::vector<Expr>>(), py::arg("breaks"), py::arg("pieces"))
        .def("__call__", &Function::operator())
        .def("__str__", &Function::str);
    py::implicitly_convertible<std::string, Function>();

    py::class_<GeneratorMap>(m, "GeneratorMap")
        .def(py::init<const Expr&, const Interval&>(), py::arg("expr"), py::arg("domain"))
        .def(py::init([](const std::string& s, const Interval& d) { return GeneratorMap(s, d); }), py::arg("text"),
             py::arg("domain"))
        .def_static("identity", &GeneratorMap::identity, py::arg("domain") = Interval::real_line())
        .def("__call__", &GeneratorMap::operator())
        .def("inverse", &GeneratorMap::inverse)
        .def_property_readonly("increasing", &GeneratorMap::increasing)
        .def_property_readonly("domain", &GeneratorMap::domain)
        .def("__str__", &GeneratorMap::str);

    py::class_<Frame>(m, "Frame")
        .def(py::init([](const GeneratorMap& g, const GeneratorMap& h) { return Frame({g, h}); }), py::arg("g"),
             py::arg("h"));

    py::enum_<MeanMethod>(m, "MeanMethod")
        .value("ClosedForm", MeanMethod::ClosedForm)
        .value("Quadrature", MeanMethod::Quadrature)
        .value("EndpointLimit", MeanMethod::EndpointLimit);

    py::class_<MeanResult>(m, "MeanResult")
        .def_readonly("value", &MeanResult::value)
        .def_readonly("abs_error", &MeanResult::abs_error)
        .def_readonly("method", &MeanResult::method)
        .def_readonly("numerator", &MeanResult::numerator)
        .def_readonly("denominator", &MeanResult::denominator)
        .def_readonly("phi_mean", &MeanResult::phi_mean)
        .def_readonly("generalized", &MeanResult::generalized)
        .def_readonly("note", &MeanResult::note)
        .def("__repr__", [](const MeanResult& r) {
            return "MeanResult(value=" + py::repr(py::float_(r.value)).cast<std::string>() + ", method=" +
                   to_string(r.method) + ")";
        });

    py::class_<MeanOptions>(m, "MeanOptions")
        .def(py::init([](double abs_tol, double rel_tol) {
                 MeanOptions o;
                 o.quad.abs_tol = abs_tol;
                 o.quad.rel_tol = rel_tol;
                 return o;
             }),
             py::arg("abs_tol") = 1e-12, py::arg("rel_tol") = 1e-10);

    const auto opt = py::arg("options") = MeanOptions{};
    m.def(
        "dvi_mean",
        [](const Function& f, const Interval& d, const GeneratorMap& g, const GeneratorMap& h, const MeanOptions& o) {
            return dvi_mean({f, d, Frame({g, h})}, o);
        },
        py::arg("f"), py::arg("domain"), py::arg("g"), py::arg("h"), opt);
    m.def("dvi_mean_riemann_oracle", [](const Function& f, const Interval& d, const GeneratorMap& g,
                                        const GeneratorMap& h, int n) { return dvi_mean_riemann_oracle({f, d, Frame({g, h})}, n); });
    m.def("class_I_mean", &class_I_mean, py::arg("f"), py::arg("domain"), py::arg("h"), opt);
    m.def("class_II_mean", &class_II_mean, py::arg("f"), py::arg("domain"), py::arg("g"), opt);
    m.def("class_III_mean", &class_III_mean, py::arg("f"), py::arg("domain"), py::arg("g"), opt);
    m.def("class_V_mean", &class_V_mean, py::arg("domain"), py::arg("g"), py::arg("h"), opt);
    m.def("class_VII_mean", &class_VII_mean, py::arg("f"), py::arg("domain"), opt);
    m.def("arithmetic_mean", &arithmetic_mean, py::arg("f"), py::arg("domain"), opt);
    m.def("geometric_mean", &geometric_mean, py::arg("f"), py::arg("domain"), opt);
    m.def("harmonic_mean", &harmonic_mean, py::arg("f"), py::arg("domain"), opt);
    m.def("elastic_mean", &elastic_mean, py::arg("f"), py::arg("domain"), opt);
    m.def("power_mean", &power_mean, py::arg("f"), py::arg("domain"), py::arg("p"), opt);
    m.def("first_mvt_mean", &first_mvt_mean, py::arg("f"), py::arg("weight"), py::arg("domain"), opt);

    m.def("iso_mean", &iso_mean, py::arg("xs"), py::arg("g"));
    m.def(
        "iso_weighted_mean",
        [](std::vector<double> xs, std::vector<double> ps, const GeneratorMap& g) {
            return iso_weighted_mean({std::move(xs), std::move(ps)}, g);
        },
        py::arg("xs"), py::arg("weights"), py::arg("g"));

    m.def("quasi_stolarsky", [](double p, double q, double a, double b) { return quasi_stolarsky({p, q, a, b}); },
          py::arg("p"), py::arg("q"), py::arg("a"), py::arg("b"));
    m.def("stolarsky_branch", [](double p, double q) { return to_string(stolarsky_branch(p, q)); });
    m.def("classV_bivariate", &classV_bivariate, py::arg("g"), py::arg("h"), py::arg("a"), py::arg("b"));
    m.def("cauchy_mean_value", &cauchy_mean_value, py::arg("f"), py::arg("g"), py::arg("a"), py::arg("b"));
    m.def("s_second_root", &s_second_root, py::arg("p"));
    m.def("sigma_GE", &sigma_GE, py::arg("r"), py::arg("p"));
    m.def("sigma_GE_threshold", &sigma_GE_threshold, py::arg("p"), py::arg("lo"), py::arg("hi"));

    py::class_<Verdict>(m, "Verdict")
        .def_property_readonly("relation", [](const Verdict& v) { return to_string(v.relation); })
        .def_readonly("criterion", &Verdict::criterion)
        .def_readonly("case_number", &Verdict::case_number)
        .def_readonly("corroborated_by", &Verdict::corroborated_by)
        .def_readonly("notes", &Verdict::notes)
        .def_readonly("left", &Verdict::left)
        .def_readonly("right", &Verdict::right)
        .def_property_readonly("decided", &Verdict::decided)
        .def("__repr__", &Verdict::summary);

    m.def(
        "compare_function_means",
        [](const Function& f, const Interval& d, const GeneratorMap& g, const GeneratorMap& h, const GeneratorMap& G,
           const GeneratorMap& H, const MeanOptions& o) {
            const ComparisonScenario s = ComparisonScenario::make(f, d, Frame({g, h}), Frame({G, H}));
            return compare_function_means(s, o);
        },
        py::arg("f"), py::arg("domain"), py::arg("g"), py::arg("h"), py::arg("G"), py::arg("H"), opt);
    m.def(
        "scenario",
        [](const Function& f, const Interval& d, const GeneratorMap& g, const GeneratorMap& h, const GeneratorMap& G,
           const GeneratorMap& H) { return to_string(ComparisonScenario::make(f, d, Frame({g, h}), Frame({G, H})).kind); },
        py::arg("f"), py::arg("domain"), py::arg("g"), py::arg("h"), py::arg("G"), py::arg("H"));
    m.def("compare_number_means", &compare_number_means, py::arg("g"), py::arg("h"), py::arg("domain"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("group", &CheckResult::group)
        .def_readonly("criterion", &CheckResult::criterion)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("residual", &CheckResult::residual)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("detail", &CheckResult::detail);
    m.def(
        "verify",
        [](std::vector<std::string> only, std::optional<double> tol) {
            return run_verification({std::move(only), tol}).checks;
        },
        py::arg("only") = std::vector<std::string>{}, py::arg("tolerance") = std::nullopt);
}
