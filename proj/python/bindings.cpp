#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dirilab/cli.hpp"
#include "dirilab/corpus.hpp"
#include "dirilab/green_identities.hpp"
#include "dirilab/io.hpp"
#include "dirilab/mean_analysis.hpp"
#include "dirilab/torus_lab.hpp"
#include "dirilab/zero_finder.hpp"

namespace py = pybind11;
using namespace dirilab;

namespace {

ExpSeries polynomial(const std::vector<std::pair<std::uint64_t, cplx>>& terms) {
    std::vector<DirichletTerm> t;
    for (const auto& [n, a] : terms) t.push_back({n, a});
    return DirichletPolynomial(std::move(t));
}

std::vector<std::pair<cplx, int>> zeros_in(const ExpSeries& f, double s0, double s1, double t0, double t1, double tol) {
    Rectangle R{s0, s1, t0, t1};
    R.validate();
    std::vector<std::pair<cplx, int>> out;
    for (const auto& z : isolate_zeros(Holomorphic::from(f), R, tol).zeros) out.emplace_back(z.location, z.multiplicity);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dirichlet series in Hardy spaces: means, Green identities, zeros and torus experiments";

    py::register_exception<Error>(m, "DirilabError", PyExc_ValueError);

    py::class_<ExpSeries>(m, "Series")
        .def("__call__", py::overload_cast<cplx>(&ExpSeries::eval, py::const_), py::arg("s"))
        .def("__len__", &ExpSeries::size)
        .def_property_readonly("primes", &ExpSeries::primes)
        .def_property_readonly("coefficients", &ExpSeries::coefficients)
        .def_property_readonly("frequencies", &ExpSeries::frequencies)
        .def("tail_bound", &ExpSeries::tail_bound, py::arg("sigma"));

    m.def("polynomial", &polynomial, py::arg("terms"), "sum of a n^{-s} from [(n, a), ...]");
    m.def("corpus", &corpus_series, py::arg("name"));
    m.def("corpus_names", [] {
        std::vector<std::string> v;
        for (const auto& e : corpus()) v.push_back(e.name);
        return v;
    });

    m.def("torus_mean", &torus_mean, py::arg("f"), py::arg("sigma"), py::arg("p"));
    m.def("parseval_mean", &parseval_mean, py::arg("f"), py::arg("sigma"));
    m.def("hp_norm", [](const ExpSeries& f, double p) { return hp_norm(f, p).value; }, py::arg("f"), py::arg("p"));
    m.def("jessen", [](const ExpSeries& f, double sigma) { return jessen_function(f, sigma, JessenMode::Torus).value; },
          py::arg("f"), py::arg("sigma"));
    m.def("hardy_stein_rhs",
          [](const ExpSeries& f, double p, double kappa, double T) { return hardy_stein_rhs(f, p, kappa, T).value; },
          py::arg("f"), py::arg("p"), py::arg("kappa"), py::arg("T"));
    m.def("isolate_zeros", &zeros_in, py::arg("f"), py::arg("s0"), py::arg("s1"), py::arg("t0"), py::arg("t1"),
          py::arg("tol") = 1e-9, "[(zero, multiplicity), ...] inside the rectangle");
    m.def("kronecker_point", [](double tau) {
        auto p = kronecker_point(tau);
        return std::make_pair(p[0], p[1]);
    }, py::arg("tau"));

    m.def("command_names", &command_names);
    m.def("run_command",
          [](const std::string& command, const std::string& config, std::optional<std::uint64_t> seed) {
              CommandOutput out;
              {
                  py::gil_scoped_release release;
                  out = run_command(command, parse_json_strict(config), seed);
              }
              py::dict files;
              for (const auto& [name, text] : out.files) files[py::str(name)] = py::str(text);
              return py::make_tuple(out.pass, files);
          },
          py::arg("command"), py::arg("config") = "{}", py::arg("seed") = py::none(),
          "(all verdicts pass, {file name: content}) for one CLI command");
}
