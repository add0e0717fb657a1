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

#include "qfdp/vqc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfdp {

namespace {

void check_finite(const VqcInput& x) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("encode: feature is not finite");
    }
  }
}

std::pair<double, double> readout(const QuantumState& state) {
  return {expectation_z(state, 0), expectation_z(state, 1)};
}

}  // namespace

QuantumState encode(const VqcInput& x) {
  check_finite(x);
  QuantumState state = zero_state(kVqcQubits);
  for (int q = 0; q < kVqcQubits; ++q) {
    state = apply_gate(std::move(state), GateOp::ry(q, std::atan(x[q])));
    state = apply_gate(std::move(state), GateOp::rz(q, std::atan(x[q] * x[q])));
  }
  return state;
}

std::vector<GateOp> vqc_circuit(const VqcInput& x, const VqcParameters& params) {
  check_finite(x);
  std::vector<GateOp> gates;
  gates.reserve(2 * kVqcQubits + kVqcQubits + kVqcQubits);
  for (int q = 0; q < kVqcQubits; ++q) {
    gates.push_back(GateOp::ry(q, std::atan(x[q])));
    gates.push_back(GateOp::rz(q, std::atan(x[q] * x[q])));
  }
  for (int q = 0; q < kVqcQubits; ++q) {
    gates.push_back(GateOp::cnot(q, (q + 1) % kVqcQubits));
  }
  for (int q = 0; q < kVqcQubits; ++q) {
    gates.push_back(GateOp::rot(q, params.at(q, 0), params.at(q, 1), params.at(q, 2)));
  }
  return gates;
}

std::pair<double, double> vqc_forward(const VqcInput& x, const VqcParameters& params) {
  return readout(apply_circuit(zero_state(kVqcQubits), vqc_circuit(x, params)));
}

std::array<double, kVqcParamCount> vqc_gradient(const VqcInput& x,
                                                const VqcParameters& params,
                                                int output_index) {
  if (output_index != 0 && output_index != 1) {
    throw std::invalid_argument("vqc_gradient: output_index must be 0 or 1");
  }
  const auto both = vqc_gradient_pair(x, params);
  return output_index == 0 ? both.first : both.second;
}

std::pair<std::array<double, kVqcParamCount>, std::array<double, kVqcParamCount>>
vqc_gradient_pair(const VqcInput& x, const VqcParameters& params) {
  constexpr double kShift = std::numbers::pi / 2.0;
  std::array<double, kVqcParamCount> g0{};
  std::array<double, kVqcParamCount> g1{};
  VqcParameters shifted = params;
  for (int j = 0; j < kVqcParamCount; ++j) {
    shifted.angles[j] = params.angles[j] + kShift;
    const auto plus = vqc_forward(x, shifted);
    shifted.angles[j] = params.angles[j] - kShift;
    const auto minus = vqc_forward(x, shifted);
    shifted.angles[j] = params.angles[j];
    g0[j] = (plus.first - minus.first) / 2.0;
    g1[j] = (plus.second - minus.second) / 2.0;
  }
  return {g0, g1};
}

}  // namespace qfdp
