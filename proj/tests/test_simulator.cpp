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

#include <chrono>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "qmp/dense.hpp"
#include "qmp/phase_path.hpp"
#include "qmp/random.hpp"

using namespace qmp;
using qmp::test::max_abs_diff;

namespace {

Circuit random_phase_classical_circuit(std::uint32_t m, int gates,
                                       CounterRng &rng) {
  Circuit c;
  c.add_register("q", m);
  for (int i = 0; i < gates; ++i) {
    const std::uint32_t a = rng.next_u64() % m;
    std::uint32_t b = rng.next_u64() % m;
    while (b == a) b = rng.next_u64() % m;
    std::uint32_t d = rng.next_u64() % m;
    while (d == a || d == b) d = rng.next_u64() % m;
    switch (rng.next_u64() % 7) {
      case 0:
        c.x(a);
        break;
      case 1:
        c.cnot(a, b);
        break;
      case 2:
        c.toffoli(a, b, d);
        break;
      case 3:
        c.fredkin(a, b, d);
        break;
      case 4:
        c.swap(a, b);
        break;
      case 5:
        c.rz(a, rng.next_angle());
        break;
      default:
        c.diag2(a, b, {rng.next_angle(), rng.next_angle(), rng.next_angle(),
                       rng.next_angle()});
        break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("phase path: CNOT flips the target when the control is set") {
  Circuit c;
  c.add_register("q", 2);
  c.cnot(0, 1);
  const BasisPath out = simulate_phase_path(c, BasisState::from_string("10"));
  CHECK(out.state.to_string() == "11");
  CHECK(std::abs(out.phase - Complex(1, 0)) < 1e-15);
}

TEST_CASE("phase path: Rz phases follow the convention") {
  const double t = 1.1;
  Circuit c;
  c.add_register("q", 1);
  c.rz(0, t);
  const BasisPath one = simulate_phase_path(c, BasisState::from_string("1"));
  CHECK(std::abs(one.phase - std::exp(Complex(0, t / 2))) < 1e-15);
  const BasisPath zero = simulate_phase_path(c, BasisState::from_string("0"));
  CHECK(std::abs(zero.phase - std::exp(Complex(0, -t / 2))) < 1e-15);
}

TEST_CASE("phase path rejects non-classical gates and names them") {
  Circuit c;
  c.add_register("q", 1);
  c.ry(0, 0.2);
  CHECK(!is_phase_classical(c));
  CHECK_THROWS_WITH_AS(
      simulate_phase_path(c, BasisState::from_string("0")),
      doctest::Contains("ry"), NonPhaseClassicalGate);

  Circuit d;
  d.add_register("q", 1);
  d.u2(0, rz_matrix(0.7));  // diagonal U2 is fine
  CHECK(is_phase_classical(d));
  const BasisPath out = simulate_phase_path(d, BasisState::from_string("1"));
  CHECK(std::abs(out.phase - std::exp(Complex(0, 0.35))) < 1e-12);
}

TEST_CASE("dense engine: empty circuit leaves the state unchanged") {
  Circuit c;
  c.add_register("q", 3);
  StateVector s = StateVector::zero_state(3);
  s = apply_dense(c, std::move(s));
  CHECK(std::abs(s.amp[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(s.norm() - 1.0) < 1e-12);
}

TEST_CASE("dense engine: Ry(pi) maps |0> to -|1> under the sign convention") {
  Circuit c;
  c.add_register("q", 1);
  c.ry(0, std::numbers::pi);
  const StateVector s = apply_dense(c, StateVector::zero_state(1));
  CHECK(std::abs(s.amp[0]) < 1e-15);
  CHECK(std::abs(s.amp[1] - Complex(-1, 0)) < 1e-15);
}

TEST_CASE("circuit_unitary: Rz and CNOT produce their defining matrices") {
  Circuit c;
  c.add_register("q", 1);
  c.rz(0, 0.37);
  CHECK(max_abs_diff(circuit_unitary(c), rz_matrix(0.37)) < 1e-15);

  Circuit cx;
  cx.add_register("q", 2);
  cx.cnot(0, 1);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = expected(2, 3) = expected(3, 2) = 1;
  CHECK(max_abs_diff(circuit_unitary(cx), expected) < 1e-15);
}

TEST_CASE("apply_dense agrees with circuit_unitary on random circuits") {
  CounterRng rng(21, "dense-cross");
  for (int rep = 0; rep < 4; ++rep) {
    Circuit c;
    c.add_register("q", 3);
    for (int i = 0; i < 24; ++i) {
      const std::uint32_t a = rng.next_u64() % 3;
      std::uint32_t b = rng.next_u64() % 3;
      while (b == a) b = rng.next_u64() % 3;
      switch (rng.next_u64() % 4) {
        case 0:
          c.u2(a, haar_unitary(2, rng));
          break;
        case 1:
          c.cnot(a, b);
          break;
        case 2:
          c.ry(a, rng.next_angle());
          break;
        default:
          c.rx(a, rng.next_angle());
          break;
      }
    }
    const Eigen::MatrixXcd u = circuit_unitary(c);
    Eigen::VectorXcd psi = random_state_vector(8, rng);
    StateVector s;
    s.num_qubits = 3;
    s.amp.assign(psi.data(), psi.data() + 8);
    const StateVector out = apply_dense(c, std::move(s));
    const Eigen::VectorXcd expected = u * psi;
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(out.amp[i] - expected(i)) < 1e-10);
    }
    CHECK(std::abs(out.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("dense and phase-path engines agree on phase-classical circuits") {
  CounterRng rng(31, "engine-agreement");
  for (int rep = 0; rep < 3; ++rep) {
    const std::uint32_t m = 4 + rep * 3;  // up to 10 qubits
    const Circuit c = random_phase_classical_circuit(m, 80, rng);
    for (int trial = 0; trial < 8; ++trial) {
      const std::uint64_t v = rng.next_u64() & ((1u << m) - 1);
      const BasisState in = BasisState::from_value(v, m);
      const BasisPath pp = simulate_phase_path(c, in);
      const StateVector dv = apply_dense(c, StateVector::basis(in));
      // locate the single nonzero amplitude
      std::size_t idx = 0;
      double best = 0;
      for (std::size_t i = 0; i < dv.amp.size(); ++i) {
        if (std::abs(dv.amp[i]) > best) {
          best = std::abs(dv.amp[i]);
          idx = i;
        }
      }
      std::size_t expected_idx = 0;
      for (std::uint32_t q = 0; q < m; ++q) {
        expected_idx = (expected_idx << 1) | (pp.state.bit(q) ? 1 : 0);
      }
      CHECK(idx == expected_idx);
      CHECK(std::abs(dv.amp[idx] - pp.phase) < 1e-10);
    }
  }
}

TEST_CASE("equal_up_to_global_phase accepts phases and rejects mismatches") {
  CounterRng rng(41, "phase-cmp");
  const Eigen::MatrixXcd u = haar_unitary(4, rng);
  const Complex lam = std::exp(Complex(0, std::numbers::pi / 7));
  auto cmp = equal_up_to_global_phase(Eigen::MatrixXcd(lam * u), u, 1e-12);
  CHECK(cmp.equal);
  CHECK(std::abs(cmp.phase - lam) < 1e-12);

  Eigen::MatrixXcd x(2, 2), id(2, 2);
  x << 0, 1, 1, 0;
  id = Eigen::MatrixXcd::Identity(2, 2);
  CHECK(!equal_up_to_global_phase(id, x, 1e-9).equal);
  CHECK_THROWS(equal_up_to_global_phase(id, Eigen::MatrixXcd::Identity(4, 4),
                                        1e-9));
}

TEST_CASE("verify_ancilla_restoration passes clean circuits and catches "
          "violations") {
  // No ancillas: vacuous pass.
  Circuit plain;
  plain.add_register("q", 2);
  plain.cnot(0, 1);
  CHECK(verify_ancilla_restoration(plain, 0, 1).passed());

  // Computes into an ancilla and uncomputes: pass.
  Circuit ok;
  ok.add_register("x", 2);
  ok.add_register("w", 1, RegisterRole::Ancilla);
  ok.toffoli(0, 1, 2);
  ok.rz(2, 0.5);
  ok.toffoli(0, 1, 2);
  CHECK(verify_ancilla_restoration(ok, 0, 1).passed());

  // Flips an ancilla: fail with a witness input.
  Circuit bad;
  bad.add_register("x", 2);
  bad.add_register("w", 1, RegisterRole::Ancilla);
  bad.cnot(0, 2);
  const VerifyReport rep = verify_ancilla_restoration(bad, 0, 1);
  CHECK(!rep.passed());
  REQUIRE(!rep.failures.empty());
  CHECK(rep.failures[0].input.substr(0, 1) == "1");

  // Dense fallback for a non-classical circuit.
  Circuit mixed;
  mixed.add_register("x", 1);
  mixed.add_register("w", 1, RegisterRole::Ancilla);
  mixed.ry(0, 0.3);
  CHECK(verify_ancilla_restoration(mixed, 0, 1).passed());
}

TEST_CASE("phase-path run time scales roughly linearly in gate count") {
  CounterRng rng(77, "runtime");
  const Circuit small = random_phase_classical_circuit(16, 4000, rng);
  const Circuit big = random_phase_classical_circuit(16, 16000, rng);
  const BasisState in = BasisState::from_value(0x2b1, 16);
  const auto time_one = [&](const Circuit &c) {
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 20; ++i) simulate_phase_path(c, in);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  time_one(small);  // warm up
  const double t_small = time_one(small);
  const double t_big = time_one(big);
  // 4x the gates should not cost much more than ~4x the time; allow slack.
  CHECK(t_big < 16 * t_small + 1e-2);
}

TEST_CASE("restricted_operator projects onto the ancilla-zero subspace") {
  // CNOT copy into an ancilla and back leaves the logical identity.
  Circuit c;
  c.add_register("x", 2);
  c.add_register("w", 1, RegisterRole::Ancilla);
  c.cnot(1, 2);
  c.rz(2, 1.0);
  c.cnot(1, 2);
  const auto logical = std::vector<std::uint32_t>{0, 1};
  const auto restricted =
      restricted_operator(c, logical, {0, 1, 2, 3});
  CHECK(restricted.max_leak < 1e-12);
  // Diagonal with phases e^{-i/2} on even, e^{+i/2} on odd columns.
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = expected(2, 2) = std::exp(Complex(0, -0.5));
  expected(1, 1) = expected(3, 3) = std::exp(Complex(0, 0.5));
  CHECK(max_abs_diff(restricted.op, expected) < 1e-12);
}
