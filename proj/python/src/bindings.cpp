// Copyright 2026 The proctensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "proctensor/channel.hpp"
#include "proctensor/commands.hpp"
#include "proctensor/correlations.hpp"
#include "proctensor/errors.hpp"
#include "proctensor/io.hpp"
#include "proctensor/process.hpp"

namespace py = pybind11;
using namespace proctensor;

namespace {

// Reports cross the boundary as plain dicts, with the same keys as the CLI JSON.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ProcessTensor process_from_spec_file(const std::string& path, const Tolerances& tol) {
  return build_from_circuit(load_process_spec(path, tol), tol);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "proctensor core bindings";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<NotAStateError>(m, "NotAStateError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("herm", &Tolerances::herm)
      .def_readwrite("tr", &Tolerances::tr)
      .def_readwrite("psd", &Tolerances::psd)
      .def_readwrite("eig", &Tolerances::eig)
      .def_readwrite("supp", &Tolerances::supp)
      .def_readwrite("xcheck", &Tolerances::xcheck)
      .def_readwrite("causal", &Tolerances::causal);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_static(
          "from_matrix",
          [](const ComplexMatrix& a, const std::vector<std::size_t>& dims, const Tolerances& tol) {
            return DensityMatrix::from_matrix(a, SubsystemShape(dims), tol);
          },
          py::arg("matrix"), py::arg("dims"), py::arg("tol") = Tolerances{})
      .def_static("maximally_mixed", &DensityMatrix::maximally_mixed, py::arg("d"))
      .def_static("maximally_entangled", &DensityMatrix::maximally_entangled, py::arg("d"))
      .def_property_readonly("dim", &DensityMatrix::dim)
      .def_property_readonly("dims", [](const DensityMatrix& rho) { return rho.shape().dims(); })
      .def_property_readonly("is_factored", &DensityMatrix::is_factored)
      // Copy: the dense cache is owned by shared storage on the C++ side.
      .def("matrix", [](const DensityMatrix& rho) { return ComplexMatrix(rho.matrix()); });

  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"), py::arg("tol") = Tolerances{});
  m.def("mutual_information", &mutual_information, py::arg("rho"), py::arg("partition"),
        py::arg("tol") = Tolerances{});
  m.def("partial_trace", py::overload_cast<const DensityMatrix&, const std::vector<std::size_t>&>(&partial_trace),
        py::arg("rho"), py::arg("keep"));
  m.def(
      "trace_distance",
      [](const DensityMatrix& a, const DensityMatrix& b, const Tolerances& tol) { return trace_distance(a, b, tol); },
      py::arg("a"), py::arg("b"), py::arg("tol") = Tolerances{});
  m.def(
      "relative_entropy",
      [](const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
        return to_py(to_json(relative_entropy(rho, sigma, tol)));
      },
      py::arg("rho"), py::arg("sigma"), py::arg("tol") = Tolerances{});

  py::class_<ChannelChoi>(m, "ChannelChoi")
      .def_property_readonly("state", &ChannelChoi::state)
      .def_property_readonly("d_in", &ChannelChoi::d_in)
      .def_property_readonly("d_out", &ChannelChoi::d_out);
  m.def("depolarizing_choi", &depolarizing_choi, py::arg("d"), py::arg("p"));
  m.def("channel_M", &channel_M, py::arg("choi"), py::arg("tol") = Tolerances{});

  py::class_<ProcessTensor>(m, "ProcessTensor")
      .def_static("from_state", &ProcessTensor::from_state, py::arg("state"), py::arg("n"),
                  py::arg("tol") = Tolerances{})
      .def_property_readonly("state", &ProcessTensor::state)
      .def_property_readonly("n", &ProcessTensor::n)
      .def_property_readonly("d", &ProcessTensor::d);

  m.def("slot_labels", &slot_labels, py::arg("n"));
  m.def("nm_depolarizing_process", &nm_depolarizing_process, py::arg("p"), py::arg("tol") = Tolerances{});
  m.def("swap_chain_process", &swap_chain_process, py::arg("n"), py::arg("d"), py::arg("tol") = Tolerances{});
  m.def("cnot_swap_process", &cnot_swap_process, py::arg("tol") = Tolerances{});
  m.def(
      "random_process",
      [](std::size_t n, std::size_t d, std::size_t d_env, std::uint64_t seed, const std::string& env_init,
         const Tolerances& tol) { return random_process(RandomSpec{n, d, d_env, seed, parse_env_init(env_init)}, tol); },
      py::arg("n"), py::arg("d"), py::arg("d_env"), py::arg("seed"), py::arg("env_init") = "maximally-mixed",
      py::arg("tol") = Tolerances{});
  m.def("load_process", &process_from_spec_file, py::arg("path"), py::arg("tol") = Tolerances{});

  m.def(
      "verify_causality",
      [](const ProcessTensor& pt, double tol) { return to_py(to_json(verify_causality(pt, tol))); }, py::arg("pt"),
      py::arg("tol") = Tolerances{}.causal);
  m.def(
      "correlation_report",
      [](const ProcessTensor& pt, const Tolerances& tol) { return to_py(to_json(correlation_report(pt, tol))); },
      py::arg("pt"), py::arg("tol") = Tolerances{});
  m.def(
      "audit_bounds",
      [](const ProcessTensor& pt, const Tolerances& tol) {
        return to_py(to_json(audit_bounds(correlation_report(pt, tol), tol.xcheck)));
      },
      py::arg("pt"), py::arg("tol") = Tolerances{});
  m.def(
      "implication_checks",
      [](const ProcessTensor& pt, double epsilon, const Tolerances& tol) {
        return to_py(to_json(implication_checks(correlation_report(pt, tol), epsilon, tol.xcheck)));
      },
      py::arg("pt"), py::arg("epsilon"), py::arg("tol") = Tolerances{});
  m.def(
      "non_markovianity_crosscheck",
      [](const ProcessTensor& pt, const Tolerances& tol) { return to_py(to_json(non_markovianity_crosscheck(pt, tol))); },
      py::arg("pt"), py::arg("tol") = Tolerances{});

  // Same argument vector as the command-line tool; returns (exit_code, stdout, stderr).
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"proctensor"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
