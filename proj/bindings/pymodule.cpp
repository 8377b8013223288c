#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rkbench/bench.hpp"
#include "rkbench/problems.hpp"
#include "rkbench/tableaus.hpp"

namespace py = pybind11;
using namespace rkbench;

namespace {

py::dict record_to_dict(const ExperimentRecord& r) {
  py::dict d;
  d["method"] = r.method;
  d["problem"] = r.problem;
  d["mode"] = r.mode;
  d["h"] = std::isnan(r.h) ? py::object(py::none()) : py::object(py::float_(r.h));
  d["tol"] = std::isnan(r.tol) ? py::object(py::none()) : py::object(py::float_(r.tol));
  d["M"] = r.M < 0 ? py::object(py::none()) : py::object(py::int_(r.M));
  d["jvp_mode"] = r.jvp_mode;
  d["error_l2"] = std::isnan(r.error_l2) ? py::object(py::none())
                                         : py::object(py::float_(r.error_l2));
  d["steps_accepted"] = r.steps_accepted;
  d["steps_rejected"] = r.steps_rejected;
  d["rhs_evals"] = r.work.rhs_evals;
  d["jvp_evals"] = r.work.jvp_evals;
  d["linear_iters"] = r.work.linear_iters;
  d["newton_iters"] = r.work.newton_iters;
  d["wall_seconds"] = r.wall_seconds;
  d["status"] = r.status;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rkbench, m) {
  m.doc() = "Matrix-free Runge-Kutta time integration benchmarks";

  m.def("method_names", [] { return registry_names(); },
        "Names of the registered tableaus.");

  m.def(
      "tableau_json",
      [](const std::string& name) {
        return tableau_to_json(registry_get(name)).dump();
      },
      py::arg("name"),
      "Full coefficient dump of a registered tableau as a JSON string.");

  m.def(
      "integrate",
      [](const std::string& problem, const std::string& method,
         const std::string& preset, const std::string& mode, double h,
         double tol, int m, const std::string& jvp_mode) {
        ExperimentSpec s;
        s.kind = "integrate";
        s.problem = problem;
        s.preset = preset;
        s.methods = {method};
        s.mode = mode;
        s.integrate_h = h;
        s.integrate_tol = tol;
        s.m_list = {m};
        s.jvp_mode = jvp_mode;
        s.validate();
        const IntegrateResult r = run_integrate(s);
        py::dict d = record_to_dict(r.record);
        d["t"] = r.result.t;
        d["y"] = r.result.y;
        return d;
      },
      py::arg("problem"), py::arg("method"), py::arg("preset") = "default",
      py::arg("mode") = "adaptive", py::arg("h") = 0.0,
      py::arg("tol") = 1e-6, py::arg("m") = 4, py::arg("jvp_mode") = "fd",
      "Drive one method over a named problem; returns the run record plus "
      "the final state.");

  m.def(
      "eigs",
      [](const std::string& problem, const std::string& preset, int m,
         const std::string& jvp_mode) {
        ExperimentSpec s;
        s.kind = "eigs";
        s.problem = problem;
        s.preset = preset;
        s.eigs_m = m;
        s.jvp_mode = jvp_mode;
        s.validate();
        const EigsResult r = run_eigs(s);
        std::vector<std::tuple<double, double, double>> out;
        out.reserve(r.ritz.size());
        for (const auto& p : r.ritz)
          out.emplace_back(p.theta.real(), p.theta.imag(), p.residual);
        return out;
      },
      py::arg("problem"), py::arg("preset") = "default", py::arg("m") = 30,
      py::arg("jvp_mode") = "fd",
      "Ritz values (re, im, residual) of the Jacobian at the problem's "
      "initial state, sorted by real part.");

  m.def(
      "problem_names", [] {
        return std::vector<std::string>{"lorenz96", "burgers"};
      },
      "Names accepted by integrate/eigs.");
}
