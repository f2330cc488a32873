// Python bindings: hyperbolic numbers, scenarios, moments, laws and suites.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hyperprob/checks.hpp"
#include "hyperprob/conditional.hpp"
#include "hyperprob/distributions.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/hypernum.hpp"
#include "hyperprob/oracle.hpp"
#include "hyperprob/scenario.hpp"

namespace py = pybind11;
using namespace hyperprob;

namespace {

Tolerance tol_or_default(std::optional<double> eps) { return eps ? Tolerance(*eps) : Tolerance{}; }

HyperNum to_hyper(const py::handle& h) {
    if (py::isinstance<HyperNum>(h)) return h.cast<HyperNum>();
    if (py::isinstance<py::str>(h)) return parse_hyper(h.cast<std::string>());
    return HyperNum::real(h.cast<double>());
}

std::vector<std::pair<HyperNum, HyperNum>> pmf_items(const Pmf& f) { return {f.begin(), f.end()}; }

DistributionSpec spec_from(const std::string& law, const py::dict& p) {
    const auto get = [&](const char* k, double dflt) { return p.contains(k) ? p[k].cast<double>() : dflt; };
    const auto geti = [&](const char* k, int dflt) { return p.contains(k) ? p[k].cast<int>() : dflt; };
    const Thorn th = p.contains("thorn") ? parse_thorn(p["thorn"].cast<std::string>()) : Thorn::One;
    if (law == "bernoulli") return BernoulliSpec{get("p1", 0.5), get("p2", 0.5), th};
    if (law == "binomial") return BinomialSpec{geti("n1", 1), geti("n2", 1), get("p1", 0.5), get("p2", 0.5), th};
    if (law == "poisson") {
        auto s = make_poisson(get("lambda1", 1), get("lambda2", 1), th);
        if (p.contains("truncation")) s.truncation = p["truncation"].cast<int>();
        return s;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown law \"" + law + "\"");
}

}  // namespace

PYBIND11_MODULE(hyperprob, m) {
    m.doc() = "Hyperbolic-valued discrete probability";

    py::register_exception<Error>(m, "HyperprobError", PyExc_ValueError);

    py::class_<HyperNum>(m, "HyperNum")
        .def(py::init<double, double>(), py::arg("u"), py::arg("v"), "Idempotent coordinates: u e + v e'.")
        .def_static("from_cartesian", &HyperNum::from_cartesian, py::arg("a"), py::arg("b"))
        .def_static("real", [](double x) { return HyperNum::real(x); })
        .def_static("parse", [](const std::string& s) { return parse_hyper(s); })
        .def_property_readonly("u", &HyperNum::u)
        .def_property_readonly("v", &HyperNum::v)
        .def_property_readonly("a", &HyperNum::a)
        .def_property_readonly("b", &HyperNum::b)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self * double())
        .def(double() * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("conjugate", [](const HyperNum& z) { return conjugate(z); })
        .def("modulus", [](const HyperNum& z) { return modulus(z); })
        .def("__pow__", [](const HyperNum& z, unsigned r) { return int_pow(z, r); })
        .def("__str__", [](const HyperNum& z) { return format_hyper(z); })
        .def("__repr__", [](const HyperNum& z) { return "HyperNum(" + format_idempotent(z) + ")"; })
        .def("__hash__", [](const HyperNum& z) { return py::hash(py::make_tuple(z.u(), z.v())); });

    m.attr("E") = kE;
    m.attr("E_DAGGER") = kEDagger;
    m.attr("K") = kUnitK;
    m.attr("ONE") = kOne;
    m.attr("ZERO") = kZero;

    m.def("format_idempotent", &format_idempotent);
    m.def("classify", [](const py::handle& z, std::optional<double> tol) {
        return std::string(to_string(classify(to_hyper(z), tol_or_default(tol))));
    }, py::arg("z"), py::arg("tol") = py::none());
    m.def("compare", [](const py::handle& x, const py::handle& y, std::optional<double> tol) {
        return std::string(to_string(compare(to_hyper(x), to_hyper(y), tol_or_default(tol))));
    }, py::arg("x"), py::arg("y"), py::arg("tol") = py::none());
    m.def("inverse", [](const py::handle& z, std::optional<double> tol) { return inverse(to_hyper(z), tol_or_default(tol)); },
          py::arg("z"), py::arg("tol") = py::none());
    m.def("sup_d", [](const py::list& zs) {
        std::vector<HyperNum> v;
        for (const auto& z : zs) v.push_back(to_hyper(z));
        return sup_d(v);
    });
    m.def("ball_contains", [](const py::handle& c, const py::handle& r, const py::handle& z) {
        return ball_contains(to_hyper(c), to_hyper(r), to_hyper(z));
    });

    py::class_<Scenario>(m, "Scenario")
        .def_static("load", [](const std::filesystem::path& p) { return load_scenario(p); })
        .def_static("parse", [](const std::string& text) { return parse_scenario(text); })
        .def_property_readonly("outcomes", [](const Scenario& s) { return s.space.labels(); })
        .def_property_readonly("mass", [](const Scenario& s) { return std::string(to_string(s.measure.mass())); })
        .def_property_readonly("w1", [](const Scenario& s) { return s.measure.w1(); })
        .def_property_readonly("w2", [](const Scenario& s) { return s.measure.w2(); })
        .def_property_readonly("tolerance", [](const Scenario& s) { return s.tolerance.eps; })
        .def_property_readonly("variables", [](const Scenario& s) {
            std::vector<std::string> names;
            for (const auto& [k, v] : s.variables) names.push_back(k);
            return names;
        })
        .def("values", [](const Scenario& s, const std::string& var) { return s.variable(var).values(); })
        .def("measure_of", [](const Scenario& s, std::vector<std::size_t> a) { return measure_of(s.measure, Event(std::move(a))); })
        .def("conditional_probability", [](const Scenario& s, std::vector<std::size_t> a, std::vector<std::size_t> b) {
            return conditional_probability(s.measure, Event(std::move(a)), Event(std::move(b)), s.tolerance);
        })
        .def("expectation", [](const Scenario& s, const std::string& v) { return expectation(s.variable(v), s.measure); })
        .def("variance", [](const Scenario& s, const std::string& v) { return variance(s.variable(v), s.measure); })
        .def("moment", [](const Scenario& s, const std::string& v, unsigned r, const py::handle& about) {
            return moment_about(s.variable(v), s.measure, to_hyper(about), r);
        }, py::arg("var"), py::arg("r"), py::arg("about") = 0.0)
        .def("mgf", [](const Scenario& s, const std::string& v, const py::handle& t) { return mgf(s.variable(v), s.measure, to_hyper(t)); })
        .def("pmf", [](const Scenario& s, const std::string& v) { return pmf_items(pmf(s.variable(v), s.measure)); })
        .def("cdf", [](const Scenario& s, const std::string& v, const py::handle& z) {
            return cdf(s.variable(v), s.measure, to_hyper(z), s.tolerance);
        })
        .def("conditional_expectation", [](const Scenario& s, const std::string& v, std::vector<std::size_t> b) {
            return conditional_expectation(s.variable(v), s.measure, Event(std::move(b)), s.tolerance);
        })
        .def("partition_conditional", [](const Scenario& s, const std::string& v, const std::string& part) {
            return partition_conditional(s.variable(v), s.measure, s.partition(part), s.tolerance).values();
        }, py::arg("var"), py::arg("partition") = "P")
        .def("oracle_residual", [](const Scenario& s, const std::string& id) { return oracle::max_residual(s, id); });

    m.def("run_suite", [](const Scenario& s, const std::string& suite, std::uint64_t seed, bool parallel) {
        const auto r = run_suite(s, suite, RunOptions{seed, parallel});
        py::dict out;
        out["passed"] = r.passed();
        out["text"] = render_text(r);
        out["json"] = render_json(r);
        return out;
    }, py::arg("scenario"), py::arg("suite") = "all", py::arg("seed") = 42, py::arg("parallel") = false);
    m.def("suite_names", &suite_names);

    m.def("dist_pmf", [](const std::string& law, const py::handle& x, const py::dict& params) {
        return distribution_pmf(spec_from(law, params), to_hyper(x));
    }, py::arg("law"), py::arg("x"), py::arg("params") = py::dict());
    m.def("dist_mean", [](const std::string& law, const py::dict& params) { return distribution_mean(spec_from(law, params)); },
          py::arg("law"), py::arg("params") = py::dict());
    m.def("dist_variance", [](const std::string& law, const py::dict& params) {
        return distribution_variance(spec_from(law, params));
    }, py::arg("law"), py::arg("params") = py::dict());
    m.def("binomial_poisson_distance", &binomial_poisson_distance, py::arg("n"), py::arg("lambda1"), py::arg("lambda2"));
}
