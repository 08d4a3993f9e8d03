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

#include "qmp/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qmp {

int Gate::arity() const {
  switch (kind) {
    case GateKind::X:
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::U2:
      return 1;
    case GateKind::CNOT:
    case GateKind::Diag2:
    case GateKind::Swap:
      return 2;
    case GateKind::Toffoli:
    case GateKind::Fredkin:
      return 3;
  }
  return 0;
}

const char *gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::X:
      return "x";
    case GateKind::CNOT:
      return "cnot";
    case GateKind::Rx:
      return "rx";
    case GateKind::Ry:
      return "ry";
    case GateKind::Rz:
      return "rz";
    case GateKind::U2:
      return "u2";
    case GateKind::Diag2:
      return "diag2";
    case GateKind::Toffoli:
      return "toffoli";
    case GateKind::Fredkin:
      return "fredkin";
    case GateKind::Swap:
      return "swap";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string &name) {
  static const std::pair<const char *, GateKind> table[] = {
      {"x", GateKind::X},           {"cnot", GateKind::CNOT},
      {"rx", GateKind::Rx},         {"ry", GateKind::Ry},
      {"rz", GateKind::Rz},         {"u2", GateKind::U2},
      {"diag2", GateKind::Diag2},   {"toffoli", GateKind::Toffoli},
      {"fredkin", GateKind::Fredkin}, {"swap", GateKind::Swap},
  };
  for (const auto &[n, k] : table) {
    if (name == n) return k;
  }
  throw std::invalid_argument("unknown gate kind: " + name);
}

static void check_distinct(std::initializer_list<std::uint32_t> qs) {
  for (auto it = qs.begin(); it != qs.end(); ++it) {
    for (auto jt = it + 1; jt != qs.end(); ++jt) {
      if (*it == *jt) {
        throw std::invalid_argument("gate operands must be distinct qubits");
      }
    }
  }
}

Gate make_x(std::uint32_t t) { return Gate{GateKind::X, {t, 0, 0}, {}}; }

Gate make_cnot(std::uint32_t c, std::uint32_t t) {
  check_distinct({c, t});
  return Gate{GateKind::CNOT, {c, t, 0}, {}};
}

Gate make_rx(std::uint32_t t, double theta) {
  return Gate{GateKind::Rx, {t, 0, 0}, {theta}};
}

Gate make_ry(std::uint32_t t, double theta) {
  return Gate{GateKind::Ry, {t, 0, 0}, {theta}};
}

Gate make_rz(std::uint32_t t, double theta) {
  return Gate{GateKind::Rz, {t, 0, 0}, {theta}};
}

Gate make_u2(std::uint32_t t, const Eigen::Matrix2cd &u) {
  if (!is_unitary(u, UNITARY_EPS)) {
    throw std::invalid_argument("U2 matrix is not unitary");
  }
  Gate g{GateKind::U2, {t, 0, 0}, {}};
  g.params.reserve(8);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      g.params.push_back(u(r, c).real());
      g.params.push_back(u(r, c).imag());
    }
  }
  return g;
}

Gate make_diag2(std::uint32_t q0, std::uint32_t q1,
                const std::array<double, 4> &phases) {
  check_distinct({q0, q1});
  return Gate{GateKind::Diag2,
              {q0, q1, 0},
              {phases[0], phases[1], phases[2], phases[3]}};
}

Gate make_toffoli(std::uint32_t c0, std::uint32_t c1, std::uint32_t t) {
  check_distinct({c0, c1, t});
  return Gate{GateKind::Toffoli, {c0, c1, t}, {}};
}

Gate make_fredkin(std::uint32_t c, std::uint32_t a, std::uint32_t b) {
  check_distinct({c, a, b});
  return Gate{GateKind::Fredkin, {c, a, b}, {}};
}

Gate make_swap(std::uint32_t a, std::uint32_t b) {
  check_distinct({a, b});
  return Gate{GateKind::Swap, {a, b, 0}, {}};
}

Eigen::Matrix2cd rx_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Eigen::Matrix2cd m;
  m << Complex(c, 0), Complex(0, s), Complex(0, s), Complex(c, 0);
  return m;
}

Eigen::Matrix2cd ry_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Eigen::Matrix2cd m;
  m << Complex(c, 0), Complex(s, 0), Complex(-s, 0), Complex(c, 0);
  return m;
}

Eigen::Matrix2cd rz_matrix(double theta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(Complex(0, -theta / 2));
  m(1, 1) = std::exp(Complex(0, theta / 2));
  return m;
}

Eigen::Matrix2cd single_qubit_matrix(const Gate &g) {
  switch (g.kind) {
    case GateKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::Rx:
      return rx_matrix(g.params[0]);
    case GateKind::Ry:
      return ry_matrix(g.params[0]);
    case GateKind::Rz:
      return rz_matrix(g.params[0]);
    case GateKind::U2: {
      Eigen::Matrix2cd m;
      m << Complex(g.params[0], g.params[1]), Complex(g.params[2], g.params[3]),
          Complex(g.params[4], g.params[5]), Complex(g.params[6], g.params[7]);
      return m;
    }
    default:
      throw std::invalid_argument("not a single-qubit gate");
  }
}

Gate adjoint(const Gate &g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::Toffoli:
    case GateKind::Fredkin:
    case GateKind::Swap:
      return out;  // self-inverse
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
      out.params[0] = -g.params[0];
      return out;
    case GateKind::Diag2:
      for (double &p : out.params) p = -p;
      return out;
    case GateKind::U2: {
      Eigen::Matrix2cd m = single_qubit_matrix(g).adjoint();
      return make_u2(g.q[0], m);
    }
  }
  return out;
}

bool is_unitary(const Eigen::MatrixXcd &m, double tol) {
  if (m.rows() != m.cols()) return false;
  Eigen::MatrixXcd p = m.adjoint() * m;
  return (p - Eigen::MatrixXcd::Identity(m.rows(), m.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

}  // namespace qmp
