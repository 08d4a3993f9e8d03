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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmp/circuit.hpp"
#include "qmp/phase_path.hpp"

namespace qmp {

constexpr std::uint32_t DEFAULT_DENSE_CAP = 22;
constexpr std::uint32_t UNITARY_CAP = 12;

/** Full amplitude vector of an m-qubit system; index bit (m-1-q) carries
 *  qubit q, so qubit 0 is the most significant bit. */
struct StateVector {
  std::uint32_t num_qubits = 0;
  std::vector<Complex> amp;

  static StateVector zero_state(std::uint32_t m);
  static StateVector basis(const BasisState &s);
  double norm() const;
};

/** Applies the circuit (including its global phase) to the state in place
 *  semantics-wise; returns the evolved state. Throws CircuitError above the
 *  qubit cap. */
StateVector apply_dense(const Circuit &circuit, StateVector state,
                        std::uint32_t cap = DEFAULT_DENSE_CAP);

/** Dense matrix of the circuit, columns = images of basis states. */
Eigen::MatrixXcd circuit_unitary(const Circuit &circuit,
                                 std::uint32_t cap = UNITARY_CAP);

struct PhaseComparison {
  bool equal = false;
  double max_deviation = 0.0;
  Complex phase{1.0, 0.0};  // the unit scalar lambda that was tested
};

/** Tests A == lambda * B entrywise within tol, with lambda read off the
 *  largest-magnitude entry of B. */
PhaseComparison equal_up_to_global_phase(const Eigen::MatrixXcd &a,
                                         const Eigen::MatrixXcd &b,
                                         double tol);

struct VerifyFailure {
  std::string input;
  Complex expected_phase{1.0, 0.0};
  Complex got_phase{1.0, 0.0};
  std::string detail;
};

struct VerifyReport {
  std::int64_t checked = 0;
  std::vector<VerifyFailure> failures;
  double max_phase_error = 0.0;
  std::string mode;

  bool passed() const { return failures.empty(); }
};

/**
 * @brief Checks that ancilla registers return to |0> on random logical basis
 * inputs.
 *
 * Uses the phase-path engine when the circuit permits, the dense engine
 * otherwise. `trials` of 0 means exhaustive over logical basis inputs (dense
 * mode still caps at the engine limit).
 */
VerifyReport verify_ancilla_restoration(const Circuit &circuit,
                                        std::int64_t trials,
                                        std::uint64_t seed,
                                        std::uint32_t dense_cap =
                                            DEFAULT_DENSE_CAP);

struct RestrictedOperator {
  Eigen::MatrixXcd op;    // rows: 2^|logical|, one column per requested input
  double max_leak = 0.0;  // largest amplitude magnitude outside ancilla-zero
};

/**
 * @brief Columns of the circuit's action on the ancilla-zero subspace.
 *
 * For each requested basis value of `logical_qubits` (all other qubits
 * |0>), applies the circuit densely and projects the output onto the
 * ancilla-zero subspace, recording the worst leakage seen.
 */
RestrictedOperator restricted_operator(
    const Circuit &circuit, const std::vector<std::uint32_t> &logical_qubits,
    const std::vector<std::uint64_t> &columns,
    std::uint32_t cap = DEFAULT_DENSE_CAP);

}  // namespace qmp
