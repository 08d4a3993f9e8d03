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
#include <vector>

#include <Eigen/Dense>

#include "qmp/circuit.hpp"

namespace qmp {

/**
 * @brief A function {0,1}^n -> unit complex numbers, stored as the table of
 * phase angles theta_x with f(x) = e^{i theta_x}.
 *
 * Indices read the argument bits most-significant-first, matching the
 * library-wide qubit ordering. Identified with the diagonal unitary
 * U|x> = f(x)|x>.
 */
struct PhaseFunction {
  std::uint32_t n = 0;
  std::vector<double> angles;

  static PhaseFunction zero(std::uint32_t n);
  std::size_t size() const { return angles.size(); }
  Complex value(std::uint64_t x) const;
  Eigen::VectorXcd diagonal() const;
  void validate() const;
};

/** The lift of f to n+1 bits: angle theta_x on (x, c=0) and -theta_x on
 *  (x, c=1), with c the low-order bit. */
PhaseFunction lift_bar(const PhaseFunction &f);

enum class RotationAxis { X, Y, Z };

/** Block-diagonal rotation: R_axis(angles[x]) on the data qubit for each
 *  basis value x of the s select qubits. */
struct MultiplexedRotation {
  RotationAxis axis = RotationAxis::Z;
  std::uint32_t s = 0;
  std::vector<double> angles;

  void validate() const;
};

/** Block-diagonal single-data-qubit unitary: blocks[x] on the data qubit for
 *  each select value x. */
struct Multiplexor1 {
  std::uint32_t s = 0;
  std::vector<Eigen::Matrix2cd> blocks;

  void validate() const;
};

// Dense matrices of the multiplexed operators, select qubits first and the
// data qubit as the least significant bit. Used as test oracles.
Eigen::MatrixXcd multiplexed_rotation_matrix(const MultiplexedRotation &m);
Eigen::MatrixXcd multiplexor1_matrix(const Multiplexor1 &m);

/**
 * @brief Appends a gray-code synthesis of the multiplexed rotation.
 *
 * Alternates data-qubit rotations with CNOTs whose control follows the bit
 * where the gray code changes; the rotated angles solve the +-1 linear
 * system relating gray-code positions to select values and are computed with
 * a Walsh-Hadamard butterfly. Exactly 2^s CNOTs for s >= 1, none for s = 0.
 * A multiplexed Rx is the Rz form conjugated by H on the data qubit.
 */
void emit_multiplexed_rotation(Circuit &circ, const MultiplexedRotation &m,
                               const std::vector<std::uint32_t> &selects,
                               std::uint32_t data);

/** Standalone circuit with registers sel[s], d[1]. */
Circuit synth_multiplexed_rotation(const MultiplexedRotation &m);

/** One peeling step: an n-qubit diagonal as a multiplexed Rz on the last
 *  qubit (angle difference of each pair) times a diagonal on the remaining
 *  n-1 qubits (pair midpoints). For n = 1 the residual is the scalar n = 0
 *  table, i.e. a global phase. */
struct DiagonalPeel {
  MultiplexedRotation rotation;  // axis z, s = n-1
  PhaseFunction residual;        // on n-1 bits
};

DiagonalPeel diagonal_to_multiplexed_rz(const PhaseFunction &f);

/** Appends the full recursive peeling of diag(f) onto the given qubits. */
void emit_diagonal(Circuit &circ, const PhaseFunction &f,
                   const std::vector<std::uint32_t> &qubits);

/** Standalone circuit with register q[n]. */
Circuit synth_diagonal_single(const PhaseFunction &f);

/** u = e^{i phi} Rz(alpha) Ry(beta) Rz(gamma), beta in [0, pi]; when beta is
 *  0 or pi the gamma angle is folded into alpha. */
struct ZYZAngles {
  double phi = 0, alpha = 0, beta = 0, gamma = 0;
};

ZYZAngles zyz_decompose(const Eigen::Matrix2cd &u);
Eigen::Matrix2cd zyz_reconstruct(const ZYZAngles &a);

/** Per-select ZYZ data of a demultiplexed single-data-qubit multiplexor:
 *  blocks[x] = e^{i delta(x)} Rz(rz1[x]) Ry(ry[x]) Rz(rz2[x]). */
struct DemuxResult {
  PhaseFunction delta;      // diagonal on the select qubits
  MultiplexedRotation rz1;  // applied last
  MultiplexedRotation ry;
  MultiplexedRotation rz2;  // applied first
};

DemuxResult demultiplex_1data(const Multiplexor1 &m);

/** U = (L1 (+) L2) * M(theta) * (R1 (+) R2) with M(theta) the multiplexed
 *  Ry matrix [[C, S], [-S, C]], C = diag cos(theta_j / 2). */
struct CSDResult {
  Eigen::MatrixXcd l1, l2, r1, r2;
  std::vector<double> theta;
};

CSDResult cosine_sine_decompose(const Eigen::MatrixXcd &u);

/** One factor of the recursive multiplexor splitting: either a multiplexed
 *  Ry or a leaf single-data-qubit multiplexor, acting with the named data
 *  qubit and all other qubits (ascending) as selects. */
struct QsdFactor {
  enum class Kind { Leaf, RotY };
  Kind kind = Kind::Leaf;
  std::uint32_t data_qubit = 0;
  Multiplexor1 leaf;              // Kind::Leaf
  std::vector<double> ry_angles;  // Kind::RotY

  MultiplexedRotation as_rotation() const;  // Kind::RotY view
};

/** Splits an n-qubit unitary into 2^{n-1} leaf multiplexors and
 *  2^{n-1} - 1 multiplexed Ry factors, in application order. */
std::vector<QsdFactor> qsd_factorize(const Eigen::MatrixXcd &u);

/** Appends a single-copy synthesis of one factor (no ancillas). */
void emit_qsd_factor(Circuit &circ, const QsdFactor &factor,
                     const std::vector<std::uint32_t> &qubits);

/** Full single-copy unitary synthesis over register q[n]. */
Circuit qsd_synthesize(const Eigen::MatrixXcd &u);

/** Multiplexed-rotation schedule preparing a state from |0^n>: per level l,
 *  a multiplexed Ry then Rz pair with 2^l angles, data qubit l, selects
 *  0..l-1; levels applied in increasing order. */
struct StatePrepSchedule {
  std::vector<std::vector<double>> ry_angles;  // level l: 2^l entries
  std::vector<std::vector<double>> rz_angles;
  double global_phase = 0;
};

StatePrepSchedule state_prep_angles(const Eigen::VectorXcd &psi);

/** Single-copy state preparation over register q[n]: one multiplexed
 *  rotation pair per level, synthesized with emit_multiplexed_rotation. */
Circuit synth_state_prep_single(const Eigen::VectorXcd &psi);

}  // namespace qmp
