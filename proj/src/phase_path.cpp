// Copyright 2026 The qmp developers
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

#include "qmp/phase_path.hpp"

#include <cmath>

namespace qmp {

NonPhaseClassicalGate::NonPhaseClassicalGate(const Gate &g,
                                             std::size_t position)
    : std::runtime_error(std::string("gate is not phase-classical: ") +
                         gate_kind_name(g.kind) + " at position " +
                         std::to_string(position)),
      kind(g.kind),
      position(position) {}

BasisState::BasisState(std::uint32_t num_qubits)
    : num_qubits_(num_qubits), words_((num_qubits + 63) / 64, 0) {}

BasisState BasisState::from_string(const std::string &bits) {
  BasisState s(static_cast<std::uint32_t>(bits.size()));
  for (std::uint32_t q = 0; q < bits.size(); ++q) {
    if (bits[q] != '0' && bits[q] != '1') {
      throw std::invalid_argument("basis state string must be 0/1");
    }
    s.set_bit(q, bits[q] == '1');
  }
  return s;
}

BasisState BasisState::from_value(std::uint64_t value,
                                  std::uint32_t num_qubits) {
  BasisState s(num_qubits);
  for (std::uint32_t q = 0; q < num_qubits; ++q) {
    s.set_bit(q, (value >> (num_qubits - 1 - q)) & 1);
  }
  return s;
}

void BasisState::set_bit(std::uint32_t q, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (q & 63);
  if (v) {
    words_[q >> 6] |= mask;
  } else {
    words_[q >> 6] &= ~mask;
  }
}

std::string BasisState::to_string() const {
  std::string out(num_qubits_, '0');
  for (std::uint32_t q = 0; q < num_qubits_; ++q) {
    if (bit(q)) out[q] = '1';
  }
  return out;
}

std::uint64_t BasisState::value_of(
    const std::vector<std::uint32_t> &qubits) const {
  std::uint64_t v = 0;
  for (std::uint32_t q : qubits) v = (v << 1) | (bit(q) ? 1 : 0);
  return v;
}

BasisPath simulate_phase_path(const Circuit &circuit,
                              const BasisState &input) {
  if (input.size() != circuit.num_qubits()) {
    throw CircuitError("input size does not match circuit qubit count");
  }
  BasisState s = input;
  double angle = circuit.global_phase();
  const auto &gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate &g = gates[i];
    switch (g.kind) {
      case GateKind::X:
        s.flip_bit(g.q[0]);
        break;
      case GateKind::CNOT:
        if (s.bit(g.q[0])) s.flip_bit(g.q[1]);
        break;
      case GateKind::Toffoli:
        if (s.bit(g.q[0]) && s.bit(g.q[1])) s.flip_bit(g.q[2]);
        break;
      case GateKind::Fredkin:
        if (s.bit(g.q[0]) && s.bit(g.q[1]) != s.bit(g.q[2])) {
          s.flip_bit(g.q[1]);
          s.flip_bit(g.q[2]);
        }
        break;
      case GateKind::Swap:
        if (s.bit(g.q[0]) != s.bit(g.q[1])) {
          s.flip_bit(g.q[0]);
          s.flip_bit(g.q[1]);
        }
        break;
      case GateKind::Rz:
        angle += s.bit(g.q[0]) ? g.params[0] / 2 : -g.params[0] / 2;
        break;
      case GateKind::Diag2:
        angle += g.params[2 * (s.bit(g.q[0]) ? 1 : 0) +
                          (s.bit(g.q[1]) ? 1 : 0)];
        break;
      case GateKind::U2: {
        const double off = std::hypot(g.params[2], g.params[3]) +
                           std::hypot(g.params[4], g.params[5]);
        if (off > UNITARY_EPS) throw NonPhaseClassicalGate(g, i);
        const int b = s.bit(g.q[0]) ? 1 : 0;
        angle += std::atan2(g.params[6 * b + 1], g.params[6 * b]);
        break;
      }
      case GateKind::Rx:
      case GateKind::Ry:
        throw NonPhaseClassicalGate(g, i);
    }
  }
  return BasisPath{std::move(s), std::exp(Complex(0, angle)), angle};
}

bool is_phase_classical(const Circuit &circuit) {
  for (const Gate &g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::Rx:
      case GateKind::Ry:
        return false;
      case GateKind::U2: {
        const double off = std::hypot(g.params[2], g.params[3]) +
                           std::hypot(g.params[4], g.params[5]);
        if (off > UNITARY_EPS) return false;
        break;
      }
      default:
        break;
    }
  }
  return true;
}

}  // namespace qmp
