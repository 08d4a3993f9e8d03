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

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmp {

using Complex = std::complex<double>;

/** Tolerance for accepting a 2x2 matrix as unitary. */
constexpr double UNITARY_EPS = 1e-12;

enum class GateKind {
  X,
  CNOT,
  Rx,
  Ry,
  Rz,
  U2,       // arbitrary single-qubit unitary, params = row-major (re, im) pairs
  Diag2,    // two-qubit diagonal, params = 4 phase angles indexed by (q0_bit, q1_bit)
  Toffoli,  // controls q0, q1; target q2
  Fredkin,  // control q0; swaps q1, q2
  Swap,
};

/**
 * @brief A single gate acting on flat qubit indices.
 *
 * Rotation gates use the conventions
 *   Rx(t) = [[cos(t/2),  i sin(t/2)], [i sin(t/2), cos(t/2)]]
 *   Ry(t) = [[cos(t/2),    sin(t/2)], [ -sin(t/2), cos(t/2)]]
 *   Rz(t) = diag(e^{-i t/2}, e^{i t/2})
 * and all angles are in radians. Angles are never normalized mod 2*pi.
 */
struct Gate {
  GateKind kind;
  std::array<std::uint32_t, 3> q{0, 0, 0};
  std::vector<double> params;

  int arity() const;
  bool operator==(const Gate &other) const = default;
};

const char *gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

// Gate constructors. These validate operand distinctness; U2 additionally
// checks unitarity to UNITARY_EPS.
Gate make_x(std::uint32_t t);
Gate make_cnot(std::uint32_t c, std::uint32_t t);
Gate make_rx(std::uint32_t t, double theta);
Gate make_ry(std::uint32_t t, double theta);
Gate make_rz(std::uint32_t t, double theta);
Gate make_u2(std::uint32_t t, const Eigen::Matrix2cd &u);
Gate make_diag2(std::uint32_t q0, std::uint32_t q1,
                const std::array<double, 4> &phases);
Gate make_toffoli(std::uint32_t c0, std::uint32_t c1, std::uint32_t t);
Gate make_fredkin(std::uint32_t c, std::uint32_t a, std::uint32_t b);
Gate make_swap(std::uint32_t a, std::uint32_t b);

// Rotation matrices in the conventions above.
Eigen::Matrix2cd rx_matrix(double theta);
Eigen::Matrix2cd ry_matrix(double theta);
Eigen::Matrix2cd rz_matrix(double theta);

/** The 2x2 matrix of any single-qubit gate kind. */
Eigen::Matrix2cd single_qubit_matrix(const Gate &g);

/** The conjugated gate, for circuit inversion. */
Gate adjoint(const Gate &g);

bool is_unitary(const Eigen::MatrixXcd &m, double tol);

}  // namespace qmp
