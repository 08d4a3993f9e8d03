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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmp/gates.hpp"

namespace qmp {

class CircuitError : public std::runtime_error {
 public:
  explicit CircuitError(const std::string &msg) : std::runtime_error(msg) {}
};

enum class RegisterRole { Logical, Ancilla };

struct Register {
  std::string name;
  std::uint32_t width;
  RegisterRole role;

  bool operator==(const Register &other) const = default;
};

/** A qubit addressed by register name and index within the register. */
struct QubitRef {
  std::string reg;
  std::uint32_t index;
};

/**
 * @brief An ordered gate list over named registers.
 *
 * Qubits are addressed by flat indices assigned in register declaration
 * order; register r's qubit i has flat index offset(r) + i. In basis-state
 * indexing throughout the library, flat qubit 0 is the most significant bit.
 *
 * Ancilla registers are contractually |0> at entry and must be restored to
 * |0> at exit. A per-circuit global phase angle accumulates the scalar
 * factors dropped by gate-level rewrites, so that macro expansion preserves
 * the operator exactly.
 */
class Circuit {
 public:
  Circuit() = default;

  /** Declares a register and returns the flat index of its first qubit. */
  std::uint32_t add_register(const std::string &name, std::uint32_t width,
                             RegisterRole role = RegisterRole::Logical);

  std::uint32_t qubit(const std::string &reg, std::uint32_t index = 0) const;
  std::uint32_t qubit(const QubitRef &ref) const;
  std::vector<std::uint32_t> register_qubits(const std::string &reg) const;
  bool has_register(const std::string &reg) const;

  void add(Gate g);
  void add_global_phase(double angle) { global_phase_ += angle; }

  // Convenience emitters.
  void x(std::uint32_t t) { add(make_x(t)); }
  void cnot(std::uint32_t c, std::uint32_t t) { add(make_cnot(c, t)); }
  void rx(std::uint32_t t, double a) { add(make_rx(t, a)); }
  void ry(std::uint32_t t, double a) { add(make_ry(t, a)); }
  void rz(std::uint32_t t, double a) { add(make_rz(t, a)); }
  void u2(std::uint32_t t, const Eigen::Matrix2cd &u) { add(make_u2(t, u)); }
  void diag2(std::uint32_t q0, std::uint32_t q1,
             const std::array<double, 4> &p) {
    add(make_diag2(q0, q1, p));
  }
  void toffoli(std::uint32_t c0, std::uint32_t c1, std::uint32_t t) {
    add(make_toffoli(c0, c1, t));
  }
  void fredkin(std::uint32_t c, std::uint32_t a, std::uint32_t b) {
    add(make_fredkin(c, a, b));
  }
  void swap(std::uint32_t a, std::uint32_t b) { add(make_swap(a, b)); }

  /** Appends another circuit's gates; registers must already be declared
   *  here with identical width and role. */
  void append(const Circuit &other);

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::uint32_t ancilla_count() const;
  double global_phase() const { return global_phase_; }
  const std::vector<Register> &registers() const { return registers_; }
  const std::vector<Gate> &gates() const { return gates_; }
  bool is_ancilla(std::uint32_t flat) const;

  /** Reverse-engineers the register-level address of a flat qubit. */
  QubitRef qubit_ref(std::uint32_t flat) const;

 private:
  std::size_t qubit_ref_index(std::uint32_t flat) const;

  std::vector<Register> registers_;
  std::map<std::string, std::uint32_t> offsets_;
  std::vector<Gate> gates_;
  std::uint32_t num_qubits_ = 0;
  double global_phase_ = 0.0;
};

/** Sequential composition: a's gates, then b's. Every register of b must be
 *  declared in a with the same width and role. */
Circuit compose(const Circuit &a, const Circuit &b);

/** Parallel composition on disjoint register names. */
Circuit tensor(const Circuit &a, const Circuit &b);

/** Adjoint circuit: reversed gate order, each gate conjugated. */
Circuit inverse(const Circuit &a);

/**
 * @brief Rewrites macro gates into CNOT plus single-qubit gates.
 *
 * Fixed templates: Toffoli -> 6 CNOTs, Fredkin -> CNOT,Toffoli,CNOT
 * (8 CNOTs), Swap -> 3 CNOTs, Diag2 -> at most 2 CNOTs plus Rz gates.
 * Scalar factors are pushed into the circuit's global phase, so the expanded
 * circuit implements exactly the same operator.
 */
Circuit expand_macros(const Circuit &a);

/** CNOT total of the macro-expanded circuit (computed arithmetically). */
std::int64_t cnot_count(const Circuit &a);

/** Gate total of the macro-expanded circuit. */
std::int64_t expanded_gate_count(const Circuit &a);

/** Cost summary of a synthesized circuit. */
struct SynthesisReport {
  std::int64_t cnot_count = 0;
  std::int64_t gate_count = 0;
  std::int64_t ancilla_count = 0;
  std::optional<std::int64_t> n, k, t;
  std::optional<std::int64_t> d;
  std::optional<double> bound_value;
  std::optional<std::int64_t> naive_count;
  std::optional<double> ratio;
  std::vector<SynthesisReport> sub_reports;
  std::string notes;
};

SynthesisReport make_report(const Circuit &c);

}  // namespace qmp
