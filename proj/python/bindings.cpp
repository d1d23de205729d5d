// Copyright 2026 The fluidmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fluidmimo/bessel.hpp"
#include "fluidmimo/capacity.hpp"
#include "fluidmimo/channel.hpp"
#include "fluidmimo/channel_io.hpp"
#include "fluidmimo/errors.hpp"
#include "fluidmimo/harness.hpp"
#include "fluidmimo/jcr.hpp"
#include "fluidmimo/port_selection.hpp"

namespace py = pybind11;
using namespace fluidmimo;

PYBIND11_MODULE(_fluidmimo, m) {
  m.doc() = "Transmit/receive port selection for fluid-MIMO links";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<ArrayDims>(m, "ArrayDims")
      .def(py::init<int, int, int, int>(), py::arg("m_r"), py::arg("m_t"),
           py::arg("n_r"), py::arg("n_t"))
      .def_readwrite("m_r", &ArrayDims::m_r)
      .def_readwrite("m_t", &ArrayDims::m_t)
      .def_readwrite("n_r", &ArrayDims::n_r)
      .def_readwrite("n_t", &ArrayDims::n_t)
      .def_property_readonly("rows", &ArrayDims::rows)
      .def_property_readonly("cols", &ArrayDims::cols)
      .def("combinations", &ArrayDims::combinations)
      .def("__repr__", [](const ArrayDims& d) {
        return "ArrayDims(m_r=" + std::to_string(d.m_r) + ", m_t=" +
               std::to_string(d.m_t) + ", n_r=" + std::to_string(d.n_r) +
               ", n_t=" + std::to_string(d.n_t) + ")";
      });

  py::class_<FluidMimoConfig>(m, "FluidMimoConfig")
      .def(py::init([](const ArrayDims& dims, double snr_db, double w) {
             FluidMimoConfig c{dims, snr_db, w};
             c.validate();
             return c;
           }),
           py::arg("dims") = ArrayDims{2, 2, 10, 10}, py::arg("snr_db") = 5.0,
           py::arg("w") = 0.5)
      .def_readwrite("dims", &FluidMimoConfig::dims)
      .def_readwrite("snr_db", &FluidMimoConfig::snr_db)
      .def_readwrite("w", &FluidMimoConfig::w)
      .def_property_readonly("rho", &FluidMimoConfig::rho);

  m.def("bessel_j0", &bessel_j0, py::arg("x"));
  m.def("correlation_profile",
        [](int n_r, int n_t, double w) { return correlation_profile(n_r, n_t, w).mu; },
        py::arg("n_r"), py::arg("n_t"), py::arg("w"));

  py::class_<OverallChannel>(m, "OverallChannel")
      .def(py::init<const ArrayDims&, Eigen::MatrixXcd>(), py::arg("dims"),
           py::arg("entries"))
      .def_property_readonly("dims", &OverallChannel::dims)
      .def_property_readonly("entries", &OverallChannel::entries)
      .def("save", py::overload_cast<const OverallChannel&, const std::filesystem::path&>(
                       &save_channel))
      .def_static("load", py::overload_cast<const std::filesystem::path&>(&load_channel));

  m.def("generate_channel", &generate_channel, py::arg("config"), py::arg("seed"));

  py::class_<PortSelection>(m, "PortSelection")
      .def(py::init<std::vector<int>, std::vector<int>>(), py::arg("rx_ports"),
           py::arg("tx_ports"))
      .def_readwrite("rx_ports", &PortSelection::rx_ports)
      .def_readwrite("tx_ports", &PortSelection::tx_ports)
      .def("__eq__", [](const PortSelection& a, const PortSelection& b) { return a == b; });

  m.def("extract_effective", &extract_effective, py::arg("channel"), py::arg("selection"));
  m.def("capacity", &capacity, py::arg("effective"), py::arg("rho"));
  m.def("capacity_q_form", &capacity_q_form, py::arg("channel"),
        py::arg("selection"), py::arg("rho"));
  m.def("surrogate_u",
        [](const OverallChannel& ch, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
          return surrogate_u(ch, std::span<const double>(x.data(), x.size()),
                             std::span<const double>(y.data(), y.size()));
        },
        py::arg("channel"), py::arg("x"), py::arg("y"));
  m.def("capacity_upper_bound", &capacity_upper_bound, py::arg("u_value"), py::arg("rho"));

  py::class_<SolverStats>(m, "SolverStats")
      .def_readonly("iterations", &SolverStats::iterations)
      .def_readonly("duality_gap", &SolverStats::duality_gap)
      .def_readonly("primal_residual", &SolverStats::primal_residual)
      .def_readonly("dual_residual", &SolverStats::dual_residual)
      .def_readonly("complementarity", &SolverStats::complementarity)
      .def_readonly("converged", &SolverStats::converged);

  py::class_<RelaxedSolution>(m, "RelaxedSolution")
      .def_readonly("x_hat", &RelaxedSolution::x_hat)
      .def_readonly("y_hat", &RelaxedSolution::y_hat)
      .def_readonly("u_star", &RelaxedSolution::u_star)
      .def_readonly("rx_duals", &RelaxedSolution::rx_duals)
      .def_readonly("tx_duals", &RelaxedSolution::tx_duals)
      .def_readonly("stats", &RelaxedSolution::stats);

  m.def("solve_jcr",
        [](const OverallChannel& ch) { return solve_jcr(ch); }, py::arg("channel"));

  py::enum_<Algorithm>(m, "Algorithm")
      .value("Exhaustive", Algorithm::Exhaustive)
      .value("JcrRes", Algorithm::JcrRes)
      .value("JcrAo", Algorithm::JcrAo)
      .value("Random", Algorithm::Random)
      .value("Conventional", Algorithm::Conventional);

  py::class_<SelectionResult>(m, "SelectionResult")
      .def_readonly("selection", &SelectionResult::selection)
      .def_readonly("capacity_bits", &SelectionResult::capacity_bits)
      .def_readonly("algorithm", &SelectionResult::algorithm)
      .def_readonly("iterations", &SelectionResult::iterations)
      .def_readonly("evaluations", &SelectionResult::evaluations)
      .def_readonly("sweep_capacities", &SelectionResult::sweep_capacities);

  m.def("exhaustive_search", &exhaustive_search, py::arg("channel"),
        py::arg("rho"), py::arg("cap") = kDefaultExhaustiveCap);
  m.def("jcr_res",
        py::overload_cast<const OverallChannel&, double>(&jcr_res),
        py::arg("channel"), py::arg("rho"));
  m.def("jcr_ao",
        [](const OverallChannel& ch, double rho, double epsilon, int max_iters) {
          return jcr_ao(ch, rho, AoOptions{epsilon, max_iters});
        },
        py::arg("channel"), py::arg("rho"), py::arg("epsilon") = 1e-3,
        py::arg("max_iters") = 20);
  m.def("random_selection", &random_selection, py::arg("channel"),
        py::arg("rho"), py::arg("samples"), py::arg("seed"));
  m.def("conventional_mimo", &conventional_mimo, py::arg("channel"), py::arg("rho"));
  m.def("reduced_port_count", &reduced_port_count, py::arg("n"));
  m.def("default_random_samples", &default_random_samples, py::arg("dims"));

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("point_value", &TrialRecord::point_value)
      .def_readonly("trial", &TrialRecord::trial)
      .def_readonly("algorithm", &TrialRecord::algorithm)
      .def_readonly("capacity_bits", &TrialRecord::capacity_bits)
      .def_readonly("ao_iterations", &TrialRecord::ao_iterations)
      .def_readonly("evaluations", &TrialRecord::evaluations);

  py::class_<PointSummary>(m, "PointSummary")
      .def_readonly("point_value", &PointSummary::point_value)
      .def_readonly("algorithm", &PointSummary::algorithm)
      .def_readonly("trials", &PointSummary::trials)
      .def_readonly("mean_capacity", &PointSummary::mean_capacity)
      .def_readonly("stddev", &PointSummary::stddev)
      .def_readonly("ci95", &PointSummary::ci95)
      .def_readonly("mean_ratio", &PointSummary::mean_ratio)
      .def_readonly("mean_ao_iterations", &PointSummary::mean_ao_iterations);

  m.def("run_sweep",
        [](const FluidMimoConfig& base, const std::string& variable,
           std::vector<double> values, int trials,
           std::vector<Algorithm> algorithms, std::uint64_t master_seed) {
          SweepSpec spec;
          spec.base = base;
          const auto v = parse_sweep_variable(variable);
          if (!v) throw ConfigError("sweep", "expected ports, snr_db or w");
          spec.variable = *v;
          spec.values = std::move(values);
          spec.trials = trials;
          spec.algorithms = std::move(algorithms);
          spec.master_seed = master_seed;
          SweepResult r;
          {
            py::gil_scoped_release release;
            r = run_sweep(spec);
          }
          return py::make_tuple(r.records, r.summaries);
        },
        py::arg("base"), py::arg("variable"), py::arg("values"),
        py::arg("trials"), py::arg("algorithms"), py::arg("master_seed") = 1);
}
