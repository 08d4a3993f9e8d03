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
#include "qmp/dense.hpp"
#include "qmp/toolbox.hpp"

namespace qmp {

/**
 * Cost-model constant for the replication bound
 * (2^k+1)^t (2^{n-tk} + 2^t d n): the classical plumbing around each phase
 * slot (comparator, conditional swaps, threshold tests, copy arrays, carry
 * writes) costs at most d CNOTs per input bit once shared work is amortized
 * over the 2^k+1 slots. Derived from the fixed macro templates (Toffoli 6,
 * Fredkin 8, Swap 3, Diag2 2); validated over a wide (n, k, t) grid in the
 * test suite.
 */
constexpr std::int64_t COST_MODEL_D = 64;

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string &msg) : std::runtime_error(msg) {}
};

struct MassProdParams {
  std::uint32_t n = 0;  // input bits of the phase table
  std::uint32_t k = 0;  // restriction-prefix width
  std::uint32_t t = 0;  // replication depth, 2^t parallel copies
  std::int64_t d = COST_MODEL_D;

  void validate() const;  // requires n > k*t, k >= 1, t >= 1
};

/** Evaluates (2^k+1)^t (2^{n-tk} + 2^t d n). */
double cost_bound(const MassProdParams &p);

/**
 * Telescoping factor tables over the prefix restrictions: g[0] = f_0,
 * g[l] = conj(f_{l-1}) f_l, g[2^k] = conj(f_{2^k-1}), so that every
 * restriction satisfies f_i = prod_{l<=i} g_l = prod_{l>i} conj(g_l).
 */
struct GSequence {
  std::uint32_t k = 0;
  std::vector<PhaseFunction> g;  // 2^k + 1 tables on n-k bits
};

GSequence derive_g_sequence(const PhaseFunction &f, std::uint32_t k);

/** One replicated operand of a phase-table circuit: the n input qubits plus
 *  the conjugation-flag qubit. */
struct PairBinding {
  std::vector<std::uint32_t> input;
  std::uint32_t sign = 0;
};

/** Reversible comparator: flag ^= 1{x > y} with x, y read as integers whose
 *  first qubit is the highest-order bit; inputs and work qubits restored. */
void emit_comparator(Circuit &circ, const std::vector<std::uint32_t> &x,
                     const std::vector<std::uint32_t> &y, std::uint32_t flag,
                     const std::vector<std::uint32_t> &work);

/** Standalone comparator circuit with registers x[n], y[n], flag[1], w[n]. */
Circuit build_comparator(std::uint32_t n);

/** Threshold tests against the classical constant ell: a ^= 1{ell <= m_k},
 *  b ^= 1{ell > M_k} where m_k, M_k are the k-bit prefix values; boundary
 *  constants fold to a bare X or nothing. */
void emit_threshold(Circuit &circ, std::uint32_t k, std::uint32_t ell,
                    const std::vector<std::uint32_t> &m_prefix,
                    const std::vector<std::uint32_t> &big_m_prefix,
                    std::uint32_t a, std::uint32_t b,
                    const std::vector<std::uint32_t> &work);

/** Standalone threshold circuit with registers a[1], b[1], m[n], M[n],
 *  w[k]. */
Circuit build_threshold(std::uint32_t n, std::uint32_t k, std::uint32_t ell);

/** Phase delta on the (a,b) = (0,0) subspace, as a Diag2 macro. */
void emit_star_gate(Circuit &circ, std::uint32_t a, std::uint32_t b,
                    double delta);

/** Standalone star circuit with registers a[1], b[1]. */
Circuit build_star_gate(double delta);

/** Work-register layout shared by sequential replication builds: one level
 *  per recursion depth, holding per-copy groups and shared scratch. */
struct MassPoolSpec {
  struct Level {
    std::uint32_t copies = 0;    // per-copy groups needed
    std::uint32_t z_width = 0;   // suffix buffer per copy
    std::uint32_t w_width = 0;   // comparator scratch (shared)
    std::uint32_t tw_width = 0;  // threshold scratch (shared)
  };
  std::vector<Level> levels;

  static MassPoolSpec for_params(std::uint32_t n, std::uint32_t k,
                                 std::uint32_t t);
  void merge(const MassPoolSpec &other);
  std::uint32_t total_qubits() const;
};

/** Resolved ancilla-pool qubits inside a circuit. */
struct MassPool {
  struct Group {
    std::uint32_t cmp = 0, c = 0, a = 0, b = 0;
    std::vector<std::uint32_t> z;
  };
  struct Level {
    std::vector<Group> groups;
    std::vector<std::uint32_t> w, tw;
  };
  std::vector<Level> levels;
};

/** Declares the pool's ancilla registers in the circuit. */
MassPool declare_pool(Circuit &circ, const MassPoolSpec &spec,
                      const std::string &prefix);

/** Structural record of a replication build: the 2^k+1 phase slots per
 *  level, and the shared child build each slot dispatches to when t > 1. */
struct MassProdTrace {
  std::uint32_t n = 0, k = 0, t = 0;
  std::size_t pair_count = 0;
  struct Slot {
    std::uint32_t ell = 0;
    std::size_t serves = 0;  // (z, c) groups fed by this slot
  };
  std::vector<Slot> slots;
  std::vector<MassProdTrace> children;  // one per slot when t > 1
};

/**
 * @brief Appends the replication circuit for lift(f) to `circ`.
 *
 * Implements the 2^t-fold tensor power of the lifted phase table on the
 * given pairs, exactly (no residual global phase): comparator and
 * conditional swap order each pair, the threshold flags select which
 * telescoping factor each copy consumes, suffix bits and conjugation flags
 * are routed into the shared (z, c) group, and each factor is realized once
 * per slot - directly as a multiplexed Rz at t = 1, by a shared recursive
 * build otherwise.
 */
MassProdTrace emit_mass_prod(Circuit &circ, const PhaseFunction &f,
                             std::uint32_t k, std::uint32_t t,
                             const std::vector<PairBinding> &pairs,
                             const MassPool &pool, std::uint32_t level = 0);

struct MassBuild {
  Circuit circuit;
  MassProdTrace trace;
  std::vector<std::pair<std::string, std::string>> pair_registers;
};

/** Standalone replication circuit for lift(f)^{(x) 2^t} over logical
 *  registers x<j>[n], c<j>[1]. */
MassBuild build_mass_prod(const PhaseFunction &f, std::uint32_t n,
                          std::uint32_t k, std::uint32_t t);

/** The t = 1 base construction. */
MassBuild build_mass_prod_base(const PhaseFunction &f, std::uint32_t n,
                               std::uint32_t k);

/** Replication-parameter choice: t = ceil(log2 r); k prefers ceil(log2 n)
 *  and decreases toward 1 until n > k*t. feasible = false when none fits. */
struct KtChoice {
  std::uint32_t k = 0, t = 0;
  bool feasible = false;
};

KtChoice select_kt(std::uint32_t n, std::uint32_t r);

/** A synthesized batch of parallel copies plus its cost report. */
struct MassProdResult {
  Circuit circuit;
  SynthesisReport report;
  std::uint32_t requested_r = 1;
  std::uint32_t copies = 1;  // copies actually present in the circuit
  bool mass_produced = false;
  std::vector<std::pair<std::string, std::string>> pair_registers;
  std::vector<std::string> copy_registers;
  std::vector<MassProdTrace> traces;
};

/** r parallel copies of diag(f) on registers x<j>, conjugation flags pinned
 *  as ancillas; r = 1 falls back to the recursive peeling synthesis. */
MassProdResult mass_produce_diagonal(const PhaseFunction &f, std::uint32_t r);

/** r parallel copies of a multiplexed rotation on (sel<j>, d<j>); the Rz
 *  form is the lift of a phase table, other axes conjugate each copy's data
 *  qubit by a fixed basis change with no CNOT cost. */
MassProdResult mass_produce_multiplexed_rotation(const MultiplexedRotation &m,
                                                 std::uint32_t r);

/** r parallel copies of a single-data-qubit multiplexor: the select-diagonal
 *  plus three multiplexed rotations, each replicated; the diagonal rides on
 *  one grounded ancilla per copy. */
MassProdResult mass_produce_multiplexor1(const Multiplexor1 &m,
                                         std::uint32_t r);

/** r parallel copies of |psi>: levels below ceil(n/2) are replicated
 *  per copy, higher levels share one replication build per rotation. */
MassProdResult mass_produce_state(const Eigen::VectorXcd &psi,
                                  std::uint32_t r);

/** r parallel copies of an n-qubit unitary via the multiplexor
 *  factorization; factors too small for replication are repeated per copy
 *  and the report says so. */
MassProdResult mass_produce_unitary(const Eigen::MatrixXcd &u,
                                    std::uint32_t r);

/**
 * @brief Checks a phase-classical replication circuit against the table
 * oracle.
 *
 * For sampled (or exhaustive, samples <= 0) logical basis inputs: output
 * bits must equal input bits, ancillas must restore, and the path phase
 * must equal prod_j lift(f)(x_j, c_j) up to one circuit-wide global phase
 * fixed by the first input.
 */
VerifyReport verify_phase_oracle(
    const Circuit &circuit, const PhaseFunction &f,
    const std::vector<std::pair<std::string, std::string>> &pair_registers,
    std::int64_t samples, std::uint64_t seed, double tol);

}  // namespace qmp
