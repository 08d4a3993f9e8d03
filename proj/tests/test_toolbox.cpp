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
#include <numbers>

#include "common.hpp"
#include "qmp/dense.hpp"
#include "qmp/toolbox.hpp"

using namespace qmp;
using qmp::test::kron;
using qmp::test::max_abs_diff;

namespace {

constexpr double PI = std::numbers::pi;

PhaseFunction random_phase_function(std::uint32_t n, CounterRng &rng) {
  return PhaseFunction{n, random_phase_angles(n, rng)};
}

// Reference operator of a demultiplexed multiplexor: select-diagonal times
// the three multiplexed rotations, data qubit last.
Eigen::MatrixXcd demux_oracle(const DemuxResult &dm) {
  const std::size_t sel = std::size_t{1} << dm.delta.n;
  Eigen::MatrixXcd delta = Eigen::MatrixXcd::Zero(2 * sel, 2 * sel);
  for (std::size_t x = 0; x < sel; ++x) {
    delta.block<2, 2>(2 * x, 2 * x) =
        dm.delta.value(x) * Eigen::Matrix2cd::Identity();
  }
  return delta * multiplexed_rotation_matrix(dm.rz1) *
         multiplexed_rotation_matrix(dm.ry) *
         multiplexed_rotation_matrix(dm.rz2);
}

// [[C, S], [-S, C]] from the rotation angles.
Eigen::MatrixXcd csd_middle(const std::vector<double> &theta) {
  const Eigen::Index p = theta.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * p, 2 * p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double c = std::cos(theta[j] / 2), s = std::sin(theta[j] / 2);
    m(j, j) = c;
    m(j, j + p) = s;
    m(j + p, j) = -s;
    m(j + p, j + p) = c;
  }
  return m;
}

Eigen::MatrixXcd csd_reconstruct(const CSDResult &r) {
  const Eigen::Index p = r.l1.rows();
  Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(2 * p, 2 * p);
  Eigen::MatrixXcd right = Eigen::MatrixXcd::Zero(2 * p, 2 * p);
  left.topLeftCorner(p, p) = r.l1;
  left.bottomRightCorner(p, p) = r.l2;
  right.topLeftCorner(p, p) = r.r1;
  right.bottomRightCorner(p, p) = r.r2;
  return left * csd_middle(r.theta) * right;
}

double prep_fidelity(const Circuit &c, const Eigen::VectorXcd &psi) {
  const StateVector out = apply_dense(c, StateVector::zero_state(
                                             c.num_qubits()));
  Complex ov(0, 0);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    ov += std::conj(psi(i)) * out.amp[i];
  }
  return std::norm(ov);
}

}  // namespace

TEST_CASE("lift_bar applies f on c=0 and its conjugate on c=1") {
  PhaseFunction f{1, {PI / 3, PI / 5}};
  const PhaseFunction lifted = lift_bar(f);
  REQUIRE(lifted.n == 2);
  // c is the low-order bit of the table index.
  CHECK(lifted.angles[0b00] == PI / 3);
  CHECK(lifted.angles[0b01] == -PI / 3);
  CHECK(lifted.angles[0b10] == PI / 5);
  CHECK(lifted.angles[0b11] == -PI / 5);

  const PhaseFunction zero = lift_bar(PhaseFunction::zero(3));
  for (double a : zero.angles) CHECK(a == 0.0);

  CounterRng rng(1, "lift");
  const PhaseFunction g = random_phase_function(4, rng);
  const PhaseFunction gl = lift_bar(g);
  for (std::size_t x = 0; x < g.size(); ++x) {
    CHECK(std::abs(gl.value(2 * x + 1) - std::conj(g.value(x))) < 1e-15);
    CHECK(std::abs(gl.value(2 * x) - g.value(x)) < 1e-15);
  }
}

TEST_CASE("multiplexed rotation with no selects is a bare rotation") {
  const MultiplexedRotation m{RotationAxis::Z, 0, {0.9}};
  const Circuit c = synth_multiplexed_rotation(m);
  CHECK(cnot_count(c) == 0);
  REQUIRE(c.gates().size() == 1);
  CHECK(c.gates()[0].kind == GateKind::Rz);
  CHECK(max_abs_diff(circuit_unitary(c), rz_matrix(0.9)) < 1e-14);
}

TEST_CASE("two-angle multiplexed Rz matches the closed form") {
  const double t0 = 0.31, t1 = -1.7;
  const MultiplexedRotation m{RotationAxis::Z, 1, {t0, t1}};
  const Circuit c = synth_multiplexed_rotation(m);
  CHECK(cnot_count(c) == 2);
  // Rz((t0+t1)/2), CNOT, Rz((t0-t1)/2), CNOT
  REQUIRE(c.gates().size() == 4);
  CHECK(c.gates()[0].params[0] == doctest::Approx((t0 + t1) / 2));
  CHECK(c.gates()[2].params[0] == doctest::Approx((t0 - t1) / 2));
  CHECK(max_abs_diff(circuit_unitary(c), multiplexed_rotation_matrix(m)) <
        1e-12);
}

TEST_CASE("multiplexed rotations hit exactly 2^s CNOTs and the target "
          "operator for every axis") {
  CounterRng rng(7, "mux-rot");
  for (std::uint32_t s = 1; s <= 5; ++s) {
    for (RotationAxis axis :
         {RotationAxis::Z, RotationAxis::Y, RotationAxis::X}) {
      MultiplexedRotation m{axis, s, {}};
      m.angles.resize(std::size_t{1} << s);
      for (double &a : m.angles) a = rng.next_angle() - PI;
      const Circuit c = synth_multiplexed_rotation(m);
      CHECK(cnot_count(c) == (1 << s));
      const auto cmp = equal_up_to_global_phase(
          circuit_unitary(c), multiplexed_rotation_matrix(m), 1e-10);
      INFO("axis ", static_cast<int>(axis), " s ", s, " dev ",
           cmp.max_deviation);
      CHECK(cmp.equal);
    }
  }
}

TEST_CASE("diagonal peeling: one-qubit table splits into rotation and global "
          "phase") {
  const double t0 = 0.4, t1 = 1.9;
  const DiagonalPeel p = diagonal_to_multiplexed_rz(PhaseFunction{1, {t0, t1}});
  CHECK(p.rotation.s == 0);
  CHECK(p.rotation.angles[0] == doctest::Approx(t1 - t0));
  CHECK(p.residual.n == 0);
  CHECK(p.residual.angles[0] == doctest::Approx((t0 + t1) / 2));
}

TEST_CASE("diagonal peeling of a constant table is pure global phase") {
  PhaseFunction f{3, std::vector<double>(8, 0.77)};
  const DiagonalPeel p = diagonal_to_multiplexed_rz(f);
  for (double a : p.rotation.angles) CHECK(a == 0.0);
  const Circuit c = synth_diagonal_single(f);
  CHECK(max_abs_diff(circuit_unitary(c),
                     Eigen::MatrixXcd(f.diagonal().asDiagonal())) < 1e-12);
}

TEST_CASE("recursive diagonal synthesis reproduces diag(f) exactly") {
  CounterRng rng(9, "diag");
  for (std::uint32_t n : {1u, 2u, 4u}) {
    const PhaseFunction f = random_phase_function(n, rng);
    const Circuit c = synth_diagonal_single(f);
    CHECK(max_abs_diff(circuit_unitary(c),
                       Eigen::MatrixXcd(f.diagonal().asDiagonal())) < 1e-10);
    CHECK(cnot_count(c) == (1 << n) - 2);
  }
}

TEST_CASE("zyz decomposition canonical values and reconstruction") {
  const ZYZAngles id = zyz_decompose(Eigen::Matrix2cd::Identity());
  CHECK(id.phi == 0.0);
  CHECK(id.alpha == 0.0);
  CHECK(id.beta == 0.0);
  CHECK(id.gamma == 0.0);

  const ZYZAngles z = zyz_decompose(rz_matrix(0.83));
  CHECK(z.alpha == doctest::Approx(0.83));
  CHECK(z.beta == 0.0);
  CHECK(z.gamma == 0.0);
  CHECK(z.phi == doctest::Approx(0.0));

  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK(max_abs_diff(zyz_reconstruct(zyz_decompose(h)), h) < 1e-12);

  CounterRng rng(13, "zyz");
  for (int i = 0; i < 60; ++i) {
    const Eigen::Matrix2cd u = haar_unitary(2, rng);
    const ZYZAngles a = zyz_decompose(u);
    CHECK(a.beta >= 0.0);
    CHECK(a.beta <= PI + 1e-12);
    CHECK(max_abs_diff(zyz_reconstruct(a), u) < 1e-12);
  }
  // antidiagonal corner
  Eigen::Matrix2cd anti;
  anti << 0, Complex(0.6, 0.8), Complex(-0.6, 0.8), 0;
  CHECK(max_abs_diff(zyz_reconstruct(zyz_decompose(anti)), anti) < 1e-12);

  Eigen::Matrix2cd bad;
  bad << 1, 1, 1, 1;
  CHECK_THROWS(zyz_decompose(bad));
}

TEST_CASE("demultiplexing identity and constant multiplexors degenerates") {
  Multiplexor1 m{2, std::vector<Eigen::Matrix2cd>(
                        4, Eigen::Matrix2cd::Identity())};
  const DemuxResult dm = demultiplex_1data(m);
  for (std::size_t x = 0; x < 4; ++x) {
    CHECK(dm.delta.angles[x] == 0.0);
    CHECK(dm.rz1.angles[x] == 0.0);
    CHECK(dm.ry.angles[x] == 0.0);
    CHECK(dm.rz2.angles[x] == 0.0);
  }

  CounterRng rng(17, "demux-const");
  const Eigen::Matrix2cd u = haar_unitary(2, rng);
  Multiplexor1 cm{1, {u, u}};
  const DemuxResult dmc = demultiplex_1data(cm);
  CHECK(dmc.delta.angles[0] == dmc.delta.angles[1]);
  CHECK(dmc.ry.angles[0] == dmc.ry.angles[1]);
}

TEST_CASE("demultiplexing reassembles random multiplexors") {
  CounterRng rng(19, "demux");
  for (std::uint32_t s : {1u, 2u, 4u}) {
    Multiplexor1 m{s, {}};
    for (std::size_t x = 0; x < (std::size_t{1} << s); ++x) {
      m.blocks.push_back(haar_unitary(2, rng));
    }
    const DemuxResult dm = demultiplex_1data(m);
    for (std::size_t x = 0; x < m.blocks.size(); ++x) {
      const Eigen::Matrix2cd rebuilt =
          std::exp(Complex(0, dm.delta.angles[x])) *
          rz_matrix(dm.rz1.angles[x]) * ry_matrix(dm.ry.angles[x]) *
          rz_matrix(dm.rz2.angles[x]);
      CHECK(max_abs_diff(rebuilt, m.blocks[x]) < 1e-11);
    }
    CHECK(max_abs_diff(demux_oracle(dm), multiplexor1_matrix(m)) < 1e-10);
  }
}

TEST_CASE("cosine-sine decomposition: block-diagonal input needs no "
          "rotation") {
  CounterRng rng(23, "csd-blockdiag");
  const Eigen::MatrixXcd a = haar_unitary(4, rng);
  const Eigen::MatrixXcd b = haar_unitary(4, rng);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(8, 8);
  u.topLeftCorner(4, 4) = a;
  u.bottomRightCorner(4, 4) = b;
  const CSDResult r = cosine_sine_decompose(u);
  for (double t : r.theta) CHECK(std::abs(std::sin(t / 2)) < 1e-10);
  CHECK(max_abs_diff(csd_reconstruct(r), u) < 1e-10);
}

TEST_CASE("cosine-sine decomposition recovers multiplexed Ry inputs") {
  const MultiplexedRotation m{
      RotationAxis::Y, 2, {0.3, 1.2, -0.8, 2.5}};
  // Reference layout here has the data qubit first, matching the CSD block
  // structure, so build [[C,S],[-S,C]] directly.
  const Eigen::MatrixXcd u = csd_middle(m.angles);
  const CSDResult r = cosine_sine_decompose(u);
  CHECK(max_abs_diff(csd_reconstruct(r), u) < 1e-10);
  // Angles recovered up to per-block convention; compare |sin|, |cos|.
  for (std::size_t j = 0; j < 4; ++j) {
    bool matched = false;
    for (double a : m.angles) {
      if (std::abs(std::abs(std::sin(a / 2)) - std::sin(r.theta[j] / 2)) <
          1e-9) {
        matched = true;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("cosine-sine decomposition reconstructs random unitaries") {
  CounterRng rng(29, "csd-random");
  for (int dim : {2, 4, 8, 16}) {
    for (int rep = 0; rep < 3; ++rep) {
      const Eigen::MatrixXcd u = haar_unitary(dim, rng);
      const CSDResult r = cosine_sine_decompose(u);
      CHECK(max_abs_diff(csd_reconstruct(r), u) < 1e-8);
      CHECK(is_unitary(r.l1, 1e-9));
      CHECK(is_unitary(r.r2, 1e-8));
    }
  }
}

TEST_CASE("cosine-sine decomposition survives clustered singular values") {
  CounterRng rng(31, "csd-cluster");
  // Repeated rotation angles give degenerate cosine clusters; conjugating by
  // block-diagonal unitaries keeps the spectrum but fills all blocks.
  for (double base : {0.0, 0.3, PI / 2, PI - 1e-3}) {
    std::vector<double> theta = {base, base, base, base + 1e-9};
    Eigen::MatrixXcd u = csd_middle(theta);
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(8, 8);
    Eigen::MatrixXcd rgt = Eigen::MatrixXcd::Zero(8, 8);
    l.topLeftCorner(4, 4) = haar_unitary(4, rng);
    l.bottomRightCorner(4, 4) = haar_unitary(4, rng);
    rgt.topLeftCorner(4, 4) = haar_unitary(4, rng);
    rgt.bottomRightCorner(4, 4) = haar_unitary(4, rng);
    u = l * u * rgt;
    const CSDResult r = cosine_sine_decompose(u);
    CHECK(max_abs_diff(csd_reconstruct(r), u) < 1e-8);
  }
  // Identity: fully degenerate cosines.
  const CSDResult rid =
      cosine_sine_decompose(Eigen::MatrixXcd::Identity(8, 8));
  CHECK(max_abs_diff(csd_reconstruct(rid),
                     Eigen::MatrixXcd::Identity(8, 8)) < 1e-10);

  CHECK_THROWS(cosine_sine_decompose(Eigen::MatrixXcd::Zero(4, 4)));
  CHECK_THROWS(cosine_sine_decompose(Eigen::MatrixXcd::Identity(3, 3)));
}

TEST_CASE("qsd factor counts follow the halving recursion") {
  CounterRng rng(37, "qsd-count");
  for (std::uint32_t n = 1; n <= 4; ++n) {
    const Eigen::MatrixXcd u = haar_unitary(std::size_t{1} << n, rng);
    const auto factors = qsd_factorize(u);
    std::size_t leaves = 0, rys = 0;
    for (const QsdFactor &f : factors) {
      if (f.kind == QsdFactor::Kind::Leaf) {
        ++leaves;
        CHECK(f.leaf.s == n - 1);
      } else {
        ++rys;
        CHECK(f.ry_angles.size() == (std::size_t{1} << (n - 1)));
      }
    }
    CHECK(leaves == (std::size_t{1} << (n - 1)));
    CHECK(rys == (std::size_t{1} << (n - 1)) - 1);
  }
}

TEST_CASE("qsd synthesis: one qubit becomes a single gate") {
  CounterRng rng(41, "qsd-1q");
  const Eigen::MatrixXcd u = haar_unitary(2, rng);
  const Circuit c = qsd_synthesize(u);
  CHECK(c.gates().size() == 1);
  CHECK(cnot_count(c) == 0);
  CHECK(equal_up_to_global_phase(circuit_unitary(c), u, 1e-10).equal);
}

TEST_CASE("qsd synthesis matches the input unitary") {
  CounterRng rng(43, "qsd");
  for (std::uint32_t n : {2u, 3u}) {
    const double tol = n == 2 ? 1e-9 : 1e-8;
    for (int rep = 0; rep < 3; ++rep) {
      const Eigen::MatrixXcd u = haar_unitary(std::size_t{1} << n, rng);
      const Circuit c = qsd_synthesize(u);
      const auto cmp = equal_up_to_global_phase(circuit_unitary(c), u, tol);
      INFO("n ", n, " deviation ", cmp.max_deviation);
      CHECK(cmp.equal);
    }
  }
}

TEST_CASE("state prep schedule of |0..0> is all zeros") {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi(0) = 1;
  const StatePrepSchedule s = state_prep_angles(psi);
  for (const auto &level : s.ry_angles) {
    for (double a : level) CHECK(a == 0.0);
  }
  CHECK(s.global_phase == 0.0);
}

TEST_CASE("state prep: uniform one-qubit superposition") {
  Eigen::VectorXcd psi(2);
  psi << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const Circuit c = synth_state_prep_single(psi);
  CHECK(cnot_count(c) == 0);
  CHECK(prep_fidelity(c, psi) >= 1 - 1e-12);
}

TEST_CASE("state prep hits the analytic CNOT count and high fidelity") {
  CounterRng rng(47, "prep");
  const Eigen::VectorXcd psi = random_state_vector(8, rng);
  const Circuit c = synth_state_prep_single(psi);
  CHECK(cnot_count(c) == 12);  // 2 * (2 + 4)
  CHECK(prep_fidelity(c, psi) >= 1 - 1e-10);

  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = ghz(7) = 1 / std::sqrt(2.0);
  CHECK(prep_fidelity(synth_state_prep_single(ghz), ghz) >= 1 - 1e-10);

  CHECK_THROWS(state_prep_angles(Eigen::VectorXcd::Zero(4)));
}

TEST_CASE("state prep fidelity across sizes and seeds") {
  CounterRng rng(53, "prep-sweep");
  for (std::uint32_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const Eigen::VectorXcd psi =
          random_state_vector(std::size_t{1} << n, rng);
      CHECK(prep_fidelity(synth_state_prep_single(psi), psi) >= 1 - 1e-9);
    }
  }
}
