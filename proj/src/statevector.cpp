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

#include "qfdp/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qfdp {

namespace {

void check_qubit(int qubit, int n_qubits, const char* what) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::invalid_argument(std::string(what) + " index " +
                                std::to_string(qubit) + " out of range for " +
                                std::to_string(n_qubits) + " qubits");
  }
}

// Applies a 2x2 unitary [[u00, u01], [u10, u11]] to `target`.
void apply_1q(QuantumState& state, std::vector<std::complex<double>>& amps,
              int target, std::complex<double> u00, std::complex<double> u01,
              std::complex<double> u10, std::complex<double> u11) {
  const std::size_t mask = state.qubit_mask(target);
  const std::size_t dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & mask) == 0) {
      const std::size_t j = i | mask;
      const std::complex<double> a0 = amps[i];
      const std::complex<double> a1 = amps[j];
      amps[i] = u00 * a0 + u01 * a1;
      amps[j] = u10 * a0 + u11 * a1;
    }
  }
}

void apply_ry(QuantumState& state, std::vector<std::complex<double>>& amps,
              int target, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  apply_1q(state, amps, target, {c, 0.0}, {-s, 0.0}, {s, 0.0}, {c, 0.0});
}

void apply_rz(QuantumState& state, std::vector<std::complex<double>>& amps,
              int target, double theta) {
  const std::complex<double> lo = std::polar(1.0, -theta / 2.0);
  const std::complex<double> hi = std::polar(1.0, theta / 2.0);
  const std::size_t mask = state.qubit_mask(target);
  const std::size_t dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] *= (i & mask) ? hi : lo;
  }
}

void apply_cnot(QuantumState& state, std::vector<std::complex<double>>& amps,
                int control, int target) {
  const std::size_t cmask = state.qubit_mask(control);
  const std::size_t tmask = state.qubit_mask(target);
  const std::size_t dim = amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cmask) && !(i & tmask)) {
      std::swap(amps[i], amps[i | tmask]);
    }
  }
}

}  // namespace

QuantumState::QuantumState(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

std::size_t QuantumState::qubit_mask(int qubit) const {
  check_qubit(qubit, n_qubits_, "qubit");
  // Qubit 0 is the most significant bit.
  return std::size_t{1} << (n_qubits_ - 1 - qubit);
}

double QuantumState::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

GateOp GateOp::ry(int target, double theta) {
  GateOp g;
  g.kind = Kind::kRy;
  g.target = target;
  g.angles[0] = theta;
  return g;
}

GateOp GateOp::rz(int target, double theta) {
  GateOp g;
  g.kind = Kind::kRz;
  g.target = target;
  g.angles[0] = theta;
  return g;
}

GateOp GateOp::cnot(int control, int target) {
  GateOp g;
  g.kind = Kind::kCnot;
  g.control = control;
  g.target = target;
  return g;
}

GateOp GateOp::rot(int target, double alpha, double beta, double gamma) {
  GateOp g;
  g.kind = Kind::kRot;
  g.target = target;
  g.angles[0] = alpha;
  g.angles[1] = beta;
  g.angles[2] = gamma;
  return g;
}

GateOp GateOp::inverse() const {
  GateOp g = *this;
  if (kind == Kind::kRot) {
    // (Rz(a) Ry(b) Rz(c))^-1 = Rz(-c) Ry(-b) Rz(-a)
    g.angles[0] = -angles[2];
    g.angles[1] = -angles[1];
    g.angles[2] = -angles[0];
  } else {
    g.angles[0] = -angles[0];
  }
  return g;
}

QuantumState zero_state(int n_qubits) { return QuantumState(n_qubits); }

QuantumState apply_gate(QuantumState state, const GateOp& gate) {
  check_qubit(gate.target, state.n_qubits(), "target");
  auto& amps = state.amps_;
  switch (gate.kind) {
    case GateOp::Kind::kRy:
      apply_ry(state, amps, gate.target, gate.angles[0]);
      break;
    case GateOp::Kind::kRz:
      apply_rz(state, amps, gate.target, gate.angles[0]);
      break;
    case GateOp::Kind::kCnot:
      check_qubit(gate.control, state.n_qubits(), "control");
      if (gate.control == gate.target) {
        throw std::invalid_argument("cnot: control equals target");
      }
      apply_cnot(state, amps, gate.control, gate.target);
      break;
    case GateOp::Kind::kRot:
      // Rz(alpha) Ry(beta) Rz(gamma): rightmost factor acts first.
      apply_rz(state, amps, gate.target, gate.angles[2]);
      apply_ry(state, amps, gate.target, gate.angles[1]);
      apply_rz(state, amps, gate.target, gate.angles[0]);
      break;
  }
  return state;
}

QuantumState apply_circuit(QuantumState state, const std::vector<GateOp>& gates) {
  for (const auto& g : gates) state = apply_gate(std::move(state), g);
  return state;
}

double expectation_z(const QuantumState& state, int qubit) {
  const std::size_t mask = state.qubit_mask(qubit);
  double value = 0.0;
  std::size_t i = 0;
  for (const auto& a : state.amplitudes()) {
    const double p = std::norm(a);
    value += (i & mask) ? -p : p;
    ++i;
  }
  return value;
}

}  // namespace qfdp
