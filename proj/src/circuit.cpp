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

#include "qmp/circuit.hpp"

#include <cmath>
#include <numbers>

namespace qmp {

std::uint32_t Circuit::add_register(const std::string &name,
                                    std::uint32_t width, RegisterRole role) {
  if (name.empty() || width == 0) {
    throw CircuitError("register needs a name and positive width");
  }
  if (offsets_.count(name)) {
    throw CircuitError("duplicate register name: " + name);
  }
  const std::uint32_t offset = num_qubits_;
  registers_.push_back({name, width, role});
  offsets_[name] = offset;
  num_qubits_ += width;
  return offset;
}

std::uint32_t Circuit::qubit(const std::string &reg,
                             std::uint32_t index) const {
  auto it = offsets_.find(reg);
  if (it == offsets_.end()) {
    throw CircuitError("no such register: " + reg);
  }
  for (const Register &r : registers_) {
    if (r.name == reg) {
      if (index >= r.width) {
        throw CircuitError("qubit index out of range in register " + reg);
      }
      break;
    }
  }
  return it->second + index;
}

std::uint32_t Circuit::qubit(const QubitRef &ref) const {
  return qubit(ref.reg, ref.index);
}

std::vector<std::uint32_t> Circuit::register_qubits(
    const std::string &reg) const {
  for (const Register &r : registers_) {
    if (r.name == reg) {
      std::vector<std::uint32_t> out(r.width);
      const std::uint32_t off = offsets_.at(reg);
      for (std::uint32_t i = 0; i < r.width; ++i) out[i] = off + i;
      return out;
    }
  }
  throw CircuitError("no such register: " + reg);
}

bool Circuit::has_register(const std::string &reg) const {
  return offsets_.count(reg) != 0;
}

void Circuit::add(Gate g) {
  const int n = g.arity();
  for (int i = 0; i < n; ++i) {
    if (g.q[i] >= num_qubits_) {
      throw CircuitError("gate references undeclared qubit");
    }
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit &other) {
  std::vector<std::uint32_t> remap(other.num_qubits());
  for (const Register &r : other.registers()) {
    bool found = false;
    for (const Register &mine : registers_) {
      if (mine.name == r.name) {
        if (mine.width != r.width || mine.role != r.role) {
          throw CircuitError("register mismatch on append: " + r.name);
        }
        found = true;
        break;
      }
    }
    if (!found) {
      throw CircuitError("register mismatch on append: " + r.name);
    }
    const std::uint32_t src = other.offsets_.at(r.name);
    const std::uint32_t dst = offsets_.at(r.name);
    for (std::uint32_t i = 0; i < r.width; ++i) remap[src + i] = dst + i;
  }
  for (Gate g : other.gates()) {
    for (int i = 0; i < g.arity(); ++i) g.q[i] = remap[g.q[i]];
    add(std::move(g));
  }
  global_phase_ += other.global_phase();
}

std::uint32_t Circuit::ancilla_count() const {
  std::uint32_t n = 0;
  for (const Register &r : registers_) {
    if (r.role == RegisterRole::Ancilla) n += r.width;
  }
  return n;
}

bool Circuit::is_ancilla(std::uint32_t flat) const {
  return registers_[qubit_ref_index(flat)].role == RegisterRole::Ancilla;
}

QubitRef Circuit::qubit_ref(std::uint32_t flat) const {
  const std::size_t ri = qubit_ref_index(flat);
  return {registers_[ri].name, flat - offsets_.at(registers_[ri].name)};
}

std::size_t Circuit::qubit_ref_index(std::uint32_t flat) const {
  std::uint32_t off = 0;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (flat < off + registers_[i].width) return i;
    off += registers_[i].width;
  }
  throw CircuitError("flat qubit index out of range");
}

Circuit compose(const Circuit &a, const Circuit &b) {
  Circuit out = a;
  out.append(b);
  return out;
}

Circuit tensor(const Circuit &a, const Circuit &b) {
  Circuit out = a;
  for (const Register &r : b.registers()) {
    if (a.has_register(r.name)) {
      throw CircuitError("tensor requires disjoint register names: " + r.name);
    }
    out.add_register(r.name, r.width, r.role);
  }
  const std::uint32_t shift = a.num_qubits();
  for (Gate g : b.gates()) {
    for (int i = 0; i < g.arity(); ++i) g.q[i] += shift;
    out.add(std::move(g));
  }
  out.add_global_phase(b.global_phase());
  return out;
}

Circuit inverse(const Circuit &a) {
  Circuit out;
  for (const Register &r : a.registers()) {
    out.add_register(r.name, r.width, r.role);
  }
  const auto &gs = a.gates();
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
    out.add(adjoint(*it));
  }
  out.add_global_phase(-a.global_phase());
  return out;
}

namespace {

constexpr double PI = std::numbers::pi;

void emit_h(Circuit &c, std::uint32_t t) {
  static const Eigen::Matrix2cd h = [] {
    Eigen::Matrix2cd m;
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
  }();
  c.u2(t, h);
}

// 6-CNOT template; the residual e^{i pi/8} from writing T as Rz(pi/4) goes
// into the global phase.
void expand_toffoli(Circuit &c, std::uint32_t c0, std::uint32_t c1,
                    std::uint32_t t) {
  const double T = PI / 4;
  emit_h(c, t);
  c.cnot(c1, t);
  c.rz(t, -T);
  c.cnot(c0, t);
  c.rz(t, T);
  c.cnot(c1, t);
  c.rz(t, -T);
  c.cnot(c0, t);
  c.rz(c1, T);
  c.rz(t, T);
  c.cnot(c0, c1);
  emit_h(c, t);
  c.rz(c0, T);
  c.rz(c1, -T);
  c.cnot(c0, c1);
  c.add_global_phase(PI / 8);
}

// Diag2 splits into per-qubit Rz parts, a two-CNOT ZZ part and a scalar.
void expand_diag2(Circuit &c, std::uint32_t q0, std::uint32_t q1,
                  const std::vector<double> &p) {
  const double mu = (p[0] + p[1] + p[2] + p[3]) / 4;
  const double z0 = (p[0] + p[1] - p[2] - p[3]) / 4;
  const double z1 = (p[0] - p[1] + p[2] - p[3]) / 4;
  const double zz = (p[0] - p[1] - p[2] + p[3]) / 4;
  c.add_global_phase(mu);
  if (z0 != 0.0) c.rz(q0, -2 * z0);
  if (z1 != 0.0) c.rz(q1, -2 * z1);
  if (zz != 0.0) {
    c.cnot(q0, q1);
    c.rz(q1, -2 * zz);
    c.cnot(q0, q1);
  }
}

}  // namespace

Circuit expand_macros(const Circuit &a) {
  Circuit out;
  for (const Register &r : a.registers()) {
    out.add_register(r.name, r.width, r.role);
  }
  out.add_global_phase(a.global_phase());
  for (const Gate &g : a.gates()) {
    switch (g.kind) {
      case GateKind::Toffoli:
        expand_toffoli(out, g.q[0], g.q[1], g.q[2]);
        break;
      case GateKind::Fredkin:
        out.cnot(g.q[2], g.q[1]);
        expand_toffoli(out, g.q[0], g.q[1], g.q[2]);
        out.cnot(g.q[2], g.q[1]);
        break;
      case GateKind::Swap:
        out.cnot(g.q[0], g.q[1]);
        out.cnot(g.q[1], g.q[0]);
        out.cnot(g.q[0], g.q[1]);
        break;
      case GateKind::Diag2:
        expand_diag2(out, g.q[0], g.q[1], g.params);
        break;
      default:
        out.add(g);
        break;
    }
  }
  return out;
}

namespace {

std::int64_t gate_cnot_cost(const Gate &g) {
  switch (g.kind) {
    case GateKind::CNOT:
      return 1;
    case GateKind::Toffoli:
      return 6;
    case GateKind::Fredkin:
      return 8;
    case GateKind::Swap:
      return 3;
    case GateKind::Diag2: {
      const double zz =
          (g.params[0] - g.params[1] - g.params[2] + g.params[3]) / 4;
      return zz != 0.0 ? 2 : 0;
    }
    default:
      return 0;
  }
}

std::int64_t gate_expanded_size(const Gate &g) {
  switch (g.kind) {
    case GateKind::Toffoli:
      return 15;
    case GateKind::Fredkin:
      return 17;
    case GateKind::Swap:
      return 3;
    case GateKind::Diag2: {
      const double z0 =
          (g.params[0] + g.params[1] - g.params[2] - g.params[3]) / 4;
      const double z1 =
          (g.params[0] - g.params[1] + g.params[2] - g.params[3]) / 4;
      const double zz =
          (g.params[0] - g.params[1] - g.params[2] + g.params[3]) / 4;
      return (z0 != 0.0 ? 1 : 0) + (z1 != 0.0 ? 1 : 0) + (zz != 0.0 ? 3 : 0);
    }
    default:
      return 1;
  }
}

}  // namespace

std::int64_t cnot_count(const Circuit &a) {
  std::int64_t total = 0;
  for (const Gate &g : a.gates()) total += gate_cnot_cost(g);
  return total;
}

std::int64_t expanded_gate_count(const Circuit &a) {
  std::int64_t total = 0;
  for (const Gate &g : a.gates()) total += gate_expanded_size(g);
  return total;
}

SynthesisReport make_report(const Circuit &c) {
  SynthesisReport rep;
  rep.cnot_count = cnot_count(c);
  rep.gate_count = expanded_gate_count(c);
  rep.ancilla_count = c.ancilla_count();
  return rep;
}

}  // namespace qmp
