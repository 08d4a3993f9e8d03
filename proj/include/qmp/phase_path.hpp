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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmp/circuit.hpp"

namespace qmp {

/** Raised when a circuit contains a gate that does not map basis states to
 *  basis states times a phase; such circuits need the dense engine. */
class NonPhaseClassicalGate : public std::runtime_error {
 public:
  NonPhaseClassicalGate(const Gate &g, std::size_t position);
  GateKind kind;
  std::size_t position;
};

/** A computational basis state over all declared qubits. bit(q) follows the
 *  circuit's flat qubit numbering; qubit 0 is the most significant bit. */
class BasisState {
 public:
  explicit BasisState(std::uint32_t num_qubits);
  /** Parses a bit string like "0110", one character per qubit. */
  static BasisState from_string(const std::string &bits);
  /** Low `num_qubits` bits of `value`, most significant bit = qubit 0. */
  static BasisState from_value(std::uint64_t value, std::uint32_t num_qubits);

  bool bit(std::uint32_t q) const {
    return (words_[q >> 6] >> (q & 63)) & 1;
  }
  void set_bit(std::uint32_t q, bool v);
  void flip_bit(std::uint32_t q) {
    words_[q >> 6] ^= std::uint64_t{1} << (q & 63);
  }
  std::uint32_t size() const { return num_qubits_; }
  std::string to_string() const;
  std::uint64_t value_of(const std::vector<std::uint32_t> &qubits) const;
  bool operator==(const BasisState &other) const = default;

 private:
  std::uint32_t num_qubits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BasisPath {
  BasisState state;
  Complex phase;        // unit complex, includes the circuit's global phase
  double phase_angle;   // same phase as an exact angle sum
};

/**
 * @brief Tracks one basis state through a phase-classical circuit.
 *
 * Cost is linear in the gate count, independent of the qubit count's
 * exponential. Throws NonPhaseClassicalGate on the first gate that is not
 * basis-preserving-with-phase (X, CNOT, Toffoli, Fredkin, Swap, Rz, Diag2
 * and diagonal U2 are accepted).
 */
BasisPath simulate_phase_path(const Circuit &circuit, const BasisState &input);

/** True when every gate is accepted by the phase-path engine. */
bool is_phase_classical(const Circuit &circuit);

}  // namespace qmp
