#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpsddg/errors.hpp"
#include "mpsddg/fluxes.hpp"
#include "mpsddg/problems.hpp"
#include "mpsddg/quadrature.hpp"
#include "mpsddg/runner.hpp"
#include "mpsddg/time_integration.hpp"

namespace py = pybind11;
using namespace mpsddg;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bound-preserving DDG solvers for weighted convection-diffusion";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ProblemOptions>(m, "ProblemOptions")
      .def(py::init<>())
      .def_readwrite("porous_m", &ProblemOptions::porous_m)
      .def_readwrite("tensor_case", &ProblemOptions::tensor_case)
      .def_readwrite("epsilon", &ProblemOptions::epsilon);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("problem", &RunConfig::problem)
      .def_readwrite("problem_options", &RunConfig::problem_options)
      .def_readwrite("nx", &RunConfig::nx)
      .def_readwrite("ny", &RunConfig::ny)
      .def_readwrite("beta0", &RunConfig::beta0)
      .def_readwrite("beta1", &RunConfig::beta1)
      .def_readwrite("gamma", &RunConfig::gamma)
      .def_readwrite("gamma_y", &RunConfig::gamma_y)
      .def_readwrite("dt", &RunConfig::dt)
      .def_readwrite("safety", &RunConfig::safety)
      .def_readwrite("t_final", &RunConfig::t_final)
      .def_readwrite("limiter", &RunConfig::limiter)
      .def_readwrite("lobatto_points", &RunConfig::lobatto_points)
      .def_readwrite("snapshot_every", &RunConfig::snapshot_every)
      .def_readwrite("snapshot_times", &RunConfig::snapshot_times)
      .def_readwrite("out_dir", &RunConfig::out_dir);

  py::class_<ReportRow>(m, "ReportRow")
      .def_readonly("t", &ReportRow::t)
      .def_readonly("e1", &ReportRow::e1)
      .def_readonly("e2", &ReportRow::e2)
      .def_readonly("einf", &ReportRow::einf)
      .def_readonly("min_u", &ReportRow::min_u)
      .def_readonly("max_u", &ReportRow::max_u)
      .def_readonly("mass_drift", &ReportRow::mass_drift);

  py::class_<CflReport>(m, "CflReport")
      .def_readonly("mu0", &CflReport::mu0)
      .def_readonly("lambda0", &CflReport::lambda0)
      .def_readonly("tau", &CflReport::tau)
      .def_readonly("binding", &CflReport::binding);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("dimension", &RunResult::dimension)
      .def_readonly("gamma_x", &RunResult::gamma_x)
      .def_readonly("gamma_y", &RunResult::gamma_y)
      .def_property_readonly("bounds", [](const RunResult& r) { return py::make_tuple(r.bounds.lower, r.bounds.upper); })
      .def_readonly("cfl", &RunResult::cfl)
      .def_readonly("rows", &RunResult::rows)
      .def_readonly("steps", &RunResult::steps)
      .def_readonly("blew_up", &RunResult::blew_up)
      .def_readonly("message", &RunResult::message)
      .def_readonly("final_time", &RunResult::final_time)
      .def_property_readonly("final_errors", [](const RunResult& r) -> py::object {
        if (!r.final_error) return py::none();
        return py::make_tuple(r.final_error->e1, r.final_error->e2, r.final_error->linf);
      })
      .def("cell_averages", [](const RunResult& r) {
        std::vector<double> out;
        if (r.dimension == 1)
          for (const auto& c : r.final_1d.cells) out.push_back(c.c[0]);
        else
          for (const auto& c : r.final_2d.cells) out.push_back(c.c[0]);
        return out;
      }, "Modal constant coefficient of every cell (row-major in 2D).");

  py::class_<ConvergenceRow>(m, "ConvergenceRow")
      .def_readonly("n", &ConvergenceRow::n)
      .def_readonly("e1", &ConvergenceRow::e1)
      .def_readonly("order1", &ConvergenceRow::order1)
      .def_readonly("e2", &ConvergenceRow::e2)
      .def_readonly("order2", &ConvergenceRow::order2);

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("mode", &ConvergenceReport::mode)
      .def_readonly("rows", &ConvergenceReport::rows);

  m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("convergence_study", &convergence_study, py::arg("config"), py::arg("meshes"),
        py::call_guard<py::gil_scoped_release>());
  m.def("problem_names", &problem_names);
  m.def("barenblatt", &barenblatt, py::arg("m"), py::arg("t"), py::arg("x"));
  m.def("lambda0_unit_weight", &lambda0_unit_weight, py::arg("gamma"), py::arg("lipschitz"));
  m.def("mu0_convdiff_unit_weight",
        [](double beta0, double beta1, double gamma, double max_a) {
          return mu0_convdiff_unit_weight({beta0, beta1, gamma}, max_a);
        },
        py::arg("beta0"), py::arg("beta1"), py::arg("gamma"), py::arg("max_a"));
  m.def("alpha_coeffs",
        [](double beta0, double beta1, double gamma) {
          const AlphaCoefficients a = alpha_coeffs(gamma, {beta0, beta1, gamma});
          return py::make_tuple(a.a1, a.a2, a.a3);
        },
        py::arg("beta0"), py::arg("beta1"), py::arg("gamma"));
}
