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

#include <string>

#include "qmp/circuit.hpp"

namespace qmp {

/**
 * @brief OpenQASM 2.0 text for a macro-expanded circuit.
 *
 * Emits only cx, rx, ry, rz and u3 over one flat qreg; comment lines map
 * every register to its qubit span in declaration order. rx/ry angles are
 * negated on output so the standard exp(-i t X/2) reading reproduces this
 * library's rotation conventions; angles print with 17 significant digits.
 * The circuit's global phase is dropped (QASM 2.0 cannot express it).
 * Throws CircuitError when a macro gate is still present.
 */
std::string export_qasm(const Circuit &circuit);

/** Parses text produced by export_qasm back into a circuit (one register
 *  named q). Used for round-trip checks. */
Circuit parse_qasm(const std::string &text);

/** u3(theta, phi, lambda) as a matrix:
 *  [[cos(t/2), -e^{i lambda} sin(t/2)],
 *   [e^{i phi} sin(t/2), e^{i(phi+lambda)} cos(t/2)]]. */
Eigen::Matrix2cd u3_matrix(double theta, double phi, double lambda);

/** Angles (theta, phi, lambda) with u3_matrix equal to u up to a global
 *  phase. */
std::array<double, 3> u3_angles(const Eigen::Matrix2cd &u);

}  // namespace qmp
