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

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qfdp/statevector.hpp"

namespace qfdp {

inline constexpr int kVqcQubits = 4;
inline constexpr int kVqcParamCount = 12;  // 3 angles per qubit

// Learnable angles of the variational block: (alpha_i, beta_i, gamma_i) for
// qubit i, stored row-major as [a0, b0, g0, a1, b1, g1, ...].
struct VqcParameters {
  std::array<double, kVqcParamCount> angles{};

  double& at(int qubit, int component) { return angles[qubit * 3 + component]; }
  double at(int qubit, int component) const { return angles[qubit * 3 + component]; }
};

// Four post-reduction input features.
using VqcInput = std::array<double, kVqcQubits>;

// Feature embedding: on qubit i, Ry(arctan(x_i)) then Rz(arctan(x_i^2)),
// applied to |0000>. Throws std::invalid_argument on non-finite features.
QuantumState encode(const VqcInput& x);

// Gate list for the full circuit: encoding block, entangling CNOT ring
// (0->1, 1->2, 2->3, 3->0), then R(alpha_i, beta_i, gamma_i) on each qubit.
std::vector<GateOp> vqc_circuit(const VqcInput& x, const VqcParameters& params);

// Runs the circuit and reads out (<Z_0>, <Z_1>). Both values lie in [-1, 1].
std::pair<double, double> vqc_forward(const VqcInput& x, const VqcParameters& params);

// Gradient of one readout with respect to all 12 variational angles, by the
// two-point parameter-shift rule g_j = [f(phi_j + pi/2) - f(phi_j - pi/2)] / 2,
// exact for these rotation gates. output_index selects <Z_0> or <Z_1>.
std::array<double, kVqcParamCount> vqc_gradient(const VqcInput& x,
                                                const VqcParameters& params,
                                                int output_index);

// Gradients of both readouts in one pass; each shifted circuit is simulated
// once and measured twice.
std::pair<std::array<double, kVqcParamCount>, std::array<double, kVqcParamCount>>
vqc_gradient_pair(const VqcInput& x, const VqcParameters& params);

}  // namespace qfdp
