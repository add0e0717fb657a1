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

#include <complex>
#include <cstddef>
#include <vector>

namespace qfdp {

inline constexpr int kMaxQubits = 12;

// Exact complex-amplitude state of a small qubit register.
//
// Bit convention: qubit 0 is the most significant bit of the basis index,
// matching a top-to-bottom reading of a circuit diagram. For n qubits, qubit
// q selects bit (n - 1 - q) of the index.
class QuantumState {
 public:
  // |0...0> on n_qubits wires. Throws std::invalid_argument unless
  // 1 <= n_qubits <= kMaxQubits.
  explicit QuantumState(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  const std::complex<double>& amplitude(std::size_t basis_index) const {
    return amps_.at(basis_index);
  }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  // Bit mask selecting `qubit` in a basis index.
  std::size_t qubit_mask(int qubit) const;

  double norm_squared() const;

 private:
  friend QuantumState apply_gate(QuantumState state, const struct GateOp& gate);

  int n_qubits_;
  std::vector<std::complex<double>> amps_;
};

// One circuit operation. Use the factory functions; they enforce the angle
// arity for each kind.
struct GateOp {
  enum class Kind { kRy, kRz, kCnot, kRot };

  Kind kind = Kind::kRy;
  int target = 0;
  int control = -1;                      // CNOT only
  double angles[3] = {0.0, 0.0, 0.0};

  static GateOp ry(int target, double theta);
  static GateOp rz(int target, double theta);
  static GateOp cnot(int control, int target);
  // General single-qubit rotation R(alpha, beta, gamma), realized as the
  // product Rz(alpha) * Ry(beta) * Rz(gamma) applied right to left (Rz(gamma)
  // acts first). Spans all single-qubit unitaries up to global phase.
  static GateOp rot(int target, double alpha, double beta, double gamma);

  // Gate with negated angles; CNOT is self-inverse.
  GateOp inverse() const;
};

QuantumState zero_state(int n_qubits);

// Unitary image of `state` under `gate`. Value semantics: pass by value and
// move to avoid copies in hot loops. Throws std::invalid_argument when the
// gate's qubit indices do not fit the register.
QuantumState apply_gate(QuantumState state, const GateOp& gate);

QuantumState apply_circuit(QuantumState state, const std::vector<GateOp>& gates);

// Pauli-Z expectation of one qubit: sum over basis states of (+1 or -1)
// times |amplitude|^2, sign chosen by the qubit's bit value. Always in
// [-1, 1].
double expectation_z(const QuantumState& state, int qubit);

}  // namespace qfdp
