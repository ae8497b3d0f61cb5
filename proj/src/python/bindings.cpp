// Python bindings for the main operations: problem specs, Airy evaluation,
// the uniform approximant, the reference integrator, eigenvalues and the
// validation criteria.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tpwkb/airy.hpp"
#include "tpwkb/approximant.hpp"
#include "tpwkb/eigen.hpp"
#include "tpwkb/problem.hpp"
#include "tpwkb/reference.hpp"
#include "tpwkb/series.hpp"
#include "tpwkb/validate.hpp"

namespace py = pybind11;
using namespace tpwkb;

PYBIND11_MODULE(_tpwkb, m) {
    m.doc() = "Turning-point connection toolkit for eps^2 x'' + mu(t) x = 0";

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def_static("from_mu", &ProblemSpec::from_mu, py::arg("mu_coeffs"),
                    py::arg("nu0") = 0.5)
        .def_static("from_well", &ProblemSpec::from_well, py::arg("v_coeffs"), py::arg("energy"),
                    py::arg("nu0") = 0.5)
        .def_static("from_json_text", &ProblemSpec::from_json_text, py::arg("text"))
        .def_static("from_json_file", &ProblemSpec::from_json_file, py::arg("path"))
        .def_readonly("mu_coeffs", &ProblemSpec::mu_coeffs)
        .def_readonly("nu0", &ProblemSpec::nu0)
        .def("mu", &ProblemSpec::mu, py::arg("t"))
        .def("mu_prime", &ProblemSpec::mu_prime, py::arg("t"));

    py::class_<AiryQuad>(m, "AiryQuad")
        .def_readonly("ai", &AiryQuad::ai)
        .def_readonly("aip", &AiryQuad::aip)
        .def_readonly("bi", &AiryQuad::bi)
        .def_readonly("bip", &AiryQuad::bip)
        .def("wronskian", &AiryQuad::wronskian);
    m.def("airy_eval", &airy_eval, py::arg("x"));

    m.def("action", &action, py::arg("problem"), py::arg("a"), py::arg("b"));
    m.def("turning_points", &turning_points, py::arg("v_coeffs"), py::arg("energy"));

    py::class_<ApproxValue>(m, "ApproxValue")
        .def_readonly("xm", &ApproxValue::xm)
        .def_readonly("ym", &ApproxValue::ym)
        .def_readonly("logmag", &ApproxValue::logmag)
        .def_readonly("interval", &ApproxValue::interval);
    m.def("uniform_wu_solution", &uniform_wu_solution, py::arg("problem"), py::arg("eps"),
          py::arg("delta"), py::arg("t"), py::arg("nu") = -1.0);

    py::class_<Direction2>(m, "Direction2")
        .def_readonly("x", &Direction2::x)
        .def_readonly("y", &Direction2::y);
    m.def("wu_direction", &wu_direction, py::arg("problem"), py::arg("nu"), py::arg("eps"));
    m.def("direction_angle_distance", &direction_angle_distance, py::arg("a"), py::arg("b"));

    py::class_<LogScaledState>(m, "LogScaledState")
        .def_readonly("xhat", &LogScaledState::xhat)
        .def_readonly("yhat", &LogScaledState::yhat)
        .def_readonly("logmag", &LogScaledState::logmag)
        .def_readonly("t", &LogScaledState::t)
        .def("x", &LogScaledState::x)
        .def("y", &LogScaledState::y)
        .def("angle", &LogScaledState::angle);
    m.def(
        "integrate",
        [](const ProblemSpec& p, double eps, double t0, double x0, double y0, double t1,
           double tol) { return integrate(p, eps, t0, x0, y0, t1, tol); },
        py::arg("problem"), py::arg("eps"), py::arg("t0"), py::arg("x0"), py::arg("y0"),
        py::arg("t1"), py::arg("tol") = 1e-12);

    m.def(
        "hyp_riccati_coeffs",
        [](const ProblemSpec& p, double t, int N) { return hyp_riccati_coeffs(p, t, N).coeffs; },
        py::arg("problem"), py::arg("t"), py::arg("order"));
    m.def(
        "ell_riccati_coeffs",
        [](const ProblemSpec& p, double t, int N) { return ell_riccati_coeffs(p, t, N).coeffs; },
        py::arg("problem"), py::arg("t"), py::arg("order"));

    py::class_<EigenResult>(m, "EigenResult")
        .def_readonly("n", &EigenResult::n)
        .def_readonly("E_bs", &EigenResult::E_bs)
        .def_readonly("E_ref", &EigenResult::E_ref)
        .def_readonly("gap", &EigenResult::gap)
        .def_readonly("eps", &EigenResult::eps);
    m.def("bs_energies", &bs_energies, py::arg("v_coeffs"), py::arg("eps"), py::arg("n_max"),
          py::arg("range") = 10.0);
    m.def("reference_energies", &reference_energies, py::arg("v_coeffs"), py::arg("eps"),
          py::arg("n_max"), py::arg("tol") = 1e-11, py::arg("range") = 10.0);
    m.def("eigen_compare", &eigen_compare, py::arg("v_coeffs"), py::arg("eps"), py::arg("n_max"),
          py::arg("tol") = 1e-11);

    py::class_<CriterionResult>(m, "CriterionResult")
        .def_readonly("id", &CriterionResult::id)
        .def_readonly("name", &CriterionResult::name)
        .def_readonly("pass_", &CriterionResult::pass)
        .def_readonly("detail", &CriterionResult::detail);
    m.def("run_criteria", &run_criteria, py::arg("ids") = std::vector<int>{});
}
