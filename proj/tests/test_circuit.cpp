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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "common.hpp"
#include "qmp/circuit.hpp"
#include "qmp/dense.hpp"

using namespace qmp;
using qmp::test::max_abs_diff;

namespace {

Circuit three_qubit_circuit() {
  Circuit c;
  c.add_register("q", 3);
  return c;
}

// Permutation-matrix oracle for a classical reversible gate, built directly
// from its truth table on basis indices (qubit 0 = most significant bit).
Eigen::MatrixXcd permutation_oracle(
    std::uint32_t m, const std::function<std::size_t(std::size_t)> &f) {
  const std::size_t dim = std::size_t{1} << m;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) u(f(i), i) = 1.0;
  return u;
}

}  // namespace

TEST_CASE("rotation matrices match the stated conventions entrywise") {
  const double t = 0.7321;
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  CHECK(std::abs(rx_matrix(t)(0, 1) - Complex(0, s)) < 1e-15);
  CHECK(std::abs(rx_matrix(t)(1, 0) - Complex(0, s)) < 1e-15);
  CHECK(std::abs(ry_matrix(t)(0, 1) - Complex(s, 0)) < 1e-15);
  CHECK(std::abs(ry_matrix(t)(1, 0) - Complex(-s, 0)) < 1e-15);
  CHECK(std::abs(rz_matrix(t)(0, 0) - std::exp(Complex(0, -t / 2))) < 1e-15);
  CHECK(std::abs(rz_matrix(t)(1, 1) - std::exp(Complex(0, t / 2))) < 1e-15);
  CHECK(std::abs(rx_matrix(t)(0, 0) - Complex(c, 0)) < 1e-15);
}

TEST_CASE("registers and qubit addressing") {
  Circuit c;
  CHECK(c.add_register("x", 3) == 0);
  CHECK(c.add_register("a", 2, RegisterRole::Ancilla) == 3);
  CHECK(c.qubit("x", 2) == 2);
  CHECK(c.qubit("a", 1) == 4);
  CHECK(c.ancilla_count() == 2);
  CHECK(c.is_ancilla(4));
  CHECK(!c.is_ancilla(1));
  CHECK(c.qubit_ref(4).reg == "a");
  CHECK(c.qubit_ref(4).index == 1);
  CHECK_THROWS_AS(c.add_register("x", 1), CircuitError);
  CHECK_THROWS_AS(c.qubit("x", 3), CircuitError);
  CHECK_THROWS_AS(c.add(make_cnot(0, 9)), CircuitError);
  CHECK_THROWS(make_cnot(1, 1));
}

TEST_CASE("expand_macros leaves primitive circuits unchanged") {
  Circuit c = three_qubit_circuit();
  c.cnot(0, 1);
  const Circuit e = expand_macros(c);
  REQUIRE(e.gates().size() == 1);
  CHECK(e.gates()[0].kind == GateKind::CNOT);
  CHECK(cnot_count(c) == 1);
}

TEST_CASE("expand_macros rewrites a Toffoli into 6 CNOTs matching the 8x8 "
          "permutation") {
  Circuit c = three_qubit_circuit();
  c.toffoli(0, 1, 2);
  const Circuit e = expand_macros(c);
  int cnots = 0;
  for (const Gate &g : e.gates()) {
    CHECK(g.arity() <= 2);
    if (g.kind == GateKind::CNOT) ++cnots;
    CHECK(g.kind != GateKind::Toffoli);
  }
  CHECK(cnots == 6);
  CHECK(cnot_count(c) == 6);

  const auto oracle = permutation_oracle(3, [](std::size_t i) {
    return i == 6 ? std::size_t{7} : i == 7 ? std::size_t{6} : i;
  });
  // The template is exact including the tracked global phase.
  CHECK(max_abs_diff(circuit_unitary(e), oracle) < 1e-12);
  const auto cmp = equal_up_to_global_phase(circuit_unitary(e), oracle, 1e-10);
  CHECK(cmp.equal);
}

TEST_CASE("expand_macros rewrites Fredkin and Swap faithfully") {
  Circuit c = three_qubit_circuit();
  c.fredkin(0, 1, 2);
  CHECK(cnot_count(c) == 8);
  const auto oracle = permutation_oracle(3, [](std::size_t i) {
    return i == 5 ? std::size_t{6} : i == 6 ? std::size_t{5} : i;
  });
  CHECK(max_abs_diff(circuit_unitary(expand_macros(c)), oracle) < 1e-12);

  Circuit s = three_qubit_circuit();
  s.swap(1, 2);
  CHECK(cnot_count(s) == 3);
  const auto sw_oracle = permutation_oracle(3, [](std::size_t i) {
    const std::size_t b1 = (i >> 1) & 1, b0 = i & 1;
    return (i & 4u) | (b0 << 1) | b1;
  });
  CHECK(max_abs_diff(circuit_unitary(expand_macros(s)), sw_oracle) < 1e-12);
}

TEST_CASE("Diag2 expands to at most 2 CNOTs and the right diagonal") {
  const double d = 1.234;
  Circuit c;
  c.add_register("q", 2);
  c.diag2(0, 1, {d, 0, 0, 0});
  const Circuit e = expand_macros(c);
  CHECK(cnot_count(e) <= 2);
  Eigen::MatrixXcd oracle = Eigen::MatrixXcd::Identity(4, 4);
  oracle(0, 0) = std::exp(Complex(0, d));
  CHECK(max_abs_diff(circuit_unitary(e), oracle) < 1e-12);

  // Zero phases cost nothing.
  Circuit z;
  z.add_register("q", 2);
  z.diag2(0, 1, {0, 0, 0, 0});
  CHECK(cnot_count(z) == 0);
  CHECK(expand_macros(z).gates().empty());
}

TEST_CASE("cnot_count of an empty circuit is 0") {
  Circuit c = three_qubit_circuit();
  CHECK(cnot_count(c) == 0);
  CHECK(expanded_gate_count(c) == 0);
}

TEST_CASE("cnot_count agrees with counting the expanded gate list") {
  CounterRng rng(11, "count-consistency");
  Circuit c;
  c.add_register("q", 4);
  for (int i = 0; i < 60; ++i) {
    switch (rng.next_u64() % 7) {
      case 0:
        c.toffoli(0, 1, 2);
        break;
      case 1:
        c.fredkin(2, 3, 0);
        break;
      case 2:
        c.swap(1, 3);
        break;
      case 3:
        c.diag2(0, 3, {rng.next_angle(), rng.next_angle(), rng.next_angle(),
                       rng.next_angle()});
        break;
      case 4:
        c.cnot(1, 2);
        break;
      case 5:
        c.rz(0, rng.next_angle());
        break;
      default:
        c.x(3);
        break;
    }
  }
  const Circuit e = expand_macros(c);
  std::int64_t direct = 0;
  for (const Gate &g : e.gates()) direct += g.kind == GateKind::CNOT;
  CHECK(cnot_count(c) == direct);
  CHECK(expanded_gate_count(c) == static_cast<std::int64_t>(e.gates().size()));
  // Expansion preserves the operator exactly (global phase tracked).
  CHECK(max_abs_diff(circuit_unitary(c), circuit_unitary(e)) < 1e-10);
}

TEST_CASE("compose, tensor, inverse obey the standard semantics") {
  CounterRng rng(5, "compose");
  Circuit c;
  c.add_register("q", 2);
  c.ry(0, rng.next_angle());
  c.cnot(0, 1);
  c.rz(1, rng.next_angle());
  c.add_global_phase(0.4);

  const Circuit id = compose(c, inverse(c));
  CHECK(max_abs_diff(circuit_unitary(id), Eigen::MatrixXcd::Identity(4, 4)) <
        1e-12);
  CHECK(cnot_count(id) == 2 * cnot_count(c));
  CHECK(cnot_count(inverse(c)) == cnot_count(c));

  Circuit a;
  a.add_register("a", 1);
  a.rz(0, 0.3);
  Circuit b;
  b.add_register("b", 1);
  b.rz(0, 0.9);
  const Circuit t = tensor(a, b);
  CHECK(t.num_qubits() == 2);
  CHECK(cnot_count(t) == 0);
  CHECK(max_abs_diff(circuit_unitary(t),
                     qmp::test::kron(circuit_unitary(a), circuit_unitary(b))) <
        1e-12);

  CHECK_THROWS_AS(tensor(a, a), CircuitError);
  Circuit mism;
  mism.add_register("q", 3);
  CHECK_THROWS_AS(compose(c, mism), CircuitError);

  // inverse of Rz(t) is Rz(-t)
  Circuit r;
  r.add_register("q", 1);
  r.rz(0, 0.77);
  const Circuit ri = inverse(r);
  CHECK(ri.gates()[0].kind == GateKind::Rz);
  CHECK(ri.gates()[0].params[0] == -0.77);
}

TEST_CASE("cnot_count is additive under compose") {
  Circuit a;
  a.add_register("q", 3);
  a.toffoli(0, 1, 2);
  Circuit b;
  b.add_register("q", 3);
  b.fredkin(0, 1, 2);
  b.cnot(0, 2);
  CHECK(cnot_count(compose(a, b)) == cnot_count(a) + cnot_count(b));
}
