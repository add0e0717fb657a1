// Copyright 2026 The QFDP Authors
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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qfdp/accountant.hpp"
#include "qfdp/dataset.hpp"
#include "qfdp/experiment.hpp"
#include "qfdp/federation.hpp"
#include "qfdp/statevector.hpp"
#include "qfdp/vqc.hpp"

namespace py = pybind11;

namespace {

qfdp::VqcParameters params_from(const std::array<double, qfdp::kVqcParamCount>& angles) {
  qfdp::VqcParameters p;
  p.angles = angles;
  return p;
}

}  // namespace

PYBIND11_MODULE(qfdp, m) {
  m.doc() = "Differentially private federated training of a hybrid "
            "quantum-classical classifier (exact statevector simulation)";

  py::class_<qfdp::QuantumState>(m, "QuantumState")
      .def(py::init<int>(), py::arg("n_qubits"))
      .def_property_readonly("n_qubits", &qfdp::QuantumState::n_qubits)
      .def_property_readonly("amplitudes",
                             [](const qfdp::QuantumState& s) { return s.amplitudes(); })
      .def("__repr__", [](const qfdp::QuantumState& s) {
        std::ostringstream out;
        out << "QuantumState(n_qubits=" << s.n_qubits() << ")";
        return out.str();
      });

  py::class_<qfdp::GateOp>(m, "GateOp")
      .def_static("ry", &qfdp::GateOp::ry, py::arg("target"), py::arg("theta"))
      .def_static("rz", &qfdp::GateOp::rz, py::arg("target"), py::arg("theta"))
      .def_static("cnot", &qfdp::GateOp::cnot, py::arg("control"), py::arg("target"))
      .def_static("rot", &qfdp::GateOp::rot, py::arg("target"), py::arg("alpha"),
                  py::arg("beta"), py::arg("gamma"))
      .def("inverse", &qfdp::GateOp::inverse);

  m.def("zero_state", &qfdp::zero_state, py::arg("n_qubits"));
  m.def("apply_gate", &qfdp::apply_gate, py::arg("state"), py::arg("gate"));
  m.def("expectation_z", &qfdp::expectation_z, py::arg("state"), py::arg("qubit"));

  m.def(
      "encode",
      [](const qfdp::VqcInput& x) { return qfdp::encode(x); },
      py::arg("features"));
  m.def(
      "vqc_forward",
      [](const qfdp::VqcInput& x, const std::array<double, qfdp::kVqcParamCount>& angles) {
        return qfdp::vqc_forward(x, params_from(angles));
      },
      py::arg("features"), py::arg("angles"));
  m.def(
      "vqc_gradient",
      [](const qfdp::VqcInput& x, const std::array<double, qfdp::kVqcParamCount>& angles,
         int output_index) {
        return qfdp::vqc_gradient(x, params_from(angles), output_index);
      },
      py::arg("features"), py::arg("angles"), py::arg("output_index"));

  m.def("clip_gradient", &qfdp::clip_gradient, py::arg("gradient"), py::arg("clip_norm"));

  m.def("rdp_step_cost", &qfdp::rdp_step_cost, py::arg("q"), py::arg("sigma"),
        py::arg("alpha"));
  m.def(
      "compute_epsilon",
      [](double q, double sigma, long long steps, double delta) {
        const auto r = qfdp::compute_epsilon(q, sigma, steps, delta);
        return py::make_tuple(r.epsilon, r.order);
      },
      py::arg("q"), py::arg("sigma"), py::arg("steps"), py::arg("delta"),
      "Returns (epsilon, best_order) after `steps` compositions.");

  py::class_<qfdp::Example>(m, "Example")
      .def(py::init<>())
      .def_readwrite("features", &qfdp::Example::features)
      .def_readwrite("label", &qfdp::Example::label);

  m.def(
      "generate_synthetic",
      [](int n, int d, double separation, std::uint64_t seed) {
        qfdp::Rng rng = qfdp::Rng(seed).child(qfdp::streams::kData);
        return qfdp::generate_synthetic(n, d, separation, rng);
      },
      py::arg("n"), py::arg("d"), py::arg("separation"), py::arg("seed"));

  py::class_<qfdp::TrainingConfig>(m, "TrainingConfig")
      .def(py::init<>())
      .def_readwrite("dataset", &qfdp::TrainingConfig::dataset)
      .def_readwrite("csv_path", &qfdp::TrainingConfig::csv_path)
      .def_readwrite("n_examples", &qfdp::TrainingConfig::n_examples)
      .def_readwrite("n_features", &qfdp::TrainingConfig::n_features)
      .def_readwrite("separation", &qfdp::TrainingConfig::separation)
      .def_readwrite("test_fraction", &qfdp::TrainingConfig::test_fraction)
      .def_readwrite("clients", &qfdp::TrainingConfig::clients)
      .def_readwrite("clients_per_round", &qfdp::TrainingConfig::clients_per_round)
      .def_readwrite("local_epochs", &qfdp::TrainingConfig::local_epochs)
      .def_readwrite("rounds", &qfdp::TrainingConfig::rounds)
      .def_readwrite("lot_size", &qfdp::TrainingConfig::lot_size)
      .def_readwrite("clip_norm", &qfdp::TrainingConfig::clip_norm)
      .def_readwrite("noise_multiplier", &qfdp::TrainingConfig::noise_multiplier)
      .def_readwrite("learning_rate", &qfdp::TrainingConfig::learning_rate)
      .def_readwrite("delta", &qfdp::TrainingConfig::delta)
      .def_readwrite("seed", &qfdp::TrainingConfig::seed)
      .def_readwrite("output_dir", &qfdp::TrainingConfig::output_dir);

  m.def(
      "run_training",
      [](const qfdp::TrainingConfig& config) {
        const qfdp::Rng master(config.seed);
        const auto dataset = qfdp::load_dataset(config, master);
        const auto result = qfdp::run_training(config, dataset, master);
        py::list history;
        for (const auto& row : result.history) {
          py::dict d;
          d["round"] = row.round;
          d["epsilon"] = row.epsilon;
          d["train_loss"] = row.train_loss;
          d["test_loss"] = row.test_loss;
          d["test_accuracy"] = row.test_accuracy;
          history.append(d);
        }
        py::dict out;
        out["final_epsilon"] = result.final_epsilon;
        out["history"] = history;
        return out;
      },
      py::arg("config"),
      "Runs a federated DP training experiment in memory; returns the final "
      "epsilon and the per-round metrics.");
}
