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

#include "qmp/toolbox.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qmp {

namespace {

constexpr Complex I_UNIT{0.0, 1.0};

std::uint64_t gray(std::uint64_t j) { return j ^ (j >> 1); }

// In-place Walsh-Hadamard transform: v[u] <- sum_x (-1)^<u,x> v[x].
void walsh_hadamard(std::vector<double> &v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double a = v[j], b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Eigen::Matrix2cd axis_rotation(RotationAxis axis, double angle) {
  switch (axis) {
    case RotationAxis::X:
      return rx_matrix(angle);
    case RotationAxis::Y:
      return ry_matrix(angle);
    case RotationAxis::Z:
      return rz_matrix(angle);
  }
  throw std::invalid_argument("bad axis");
}

}  // namespace

PhaseFunction PhaseFunction::zero(std::uint32_t n) {
  return PhaseFunction{n, std::vector<double>(std::size_t{1} << n, 0.0)};
}

Complex PhaseFunction::value(std::uint64_t x) const {
  return std::exp(I_UNIT * angles.at(x));
}

Eigen::VectorXcd PhaseFunction::diagonal() const {
  Eigen::VectorXcd d(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) d(i) = value(i);
  return d;
}

void PhaseFunction::validate() const {
  if (angles.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("phase table must have exactly 2^n angles");
  }
}

PhaseFunction lift_bar(const PhaseFunction &f) {
  f.validate();
  PhaseFunction out;
  out.n = f.n + 1;
  out.angles.resize(f.angles.size() * 2);
  for (std::size_t x = 0; x < f.angles.size(); ++x) {
    out.angles[2 * x] = f.angles[x];
    out.angles[2 * x + 1] = -f.angles[x];
  }
  return out;
}

void MultiplexedRotation::validate() const {
  if (angles.size() != (std::size_t{1} << s)) {
    throw std::invalid_argument("multiplexed rotation needs 2^s angles");
  }
}

void Multiplexor1::validate() const {
  if (blocks.size() != (std::size_t{1} << s)) {
    throw std::invalid_argument("multiplexor needs 2^s blocks");
  }
  for (const auto &b : blocks) {
    if (!is_unitary(b, UNITARY_EPS)) {
      throw std::invalid_argument("multiplexor block is not unitary");
    }
  }
}

Eigen::MatrixXcd multiplexed_rotation_matrix(const MultiplexedRotation &m) {
  m.validate();
  const std::size_t dim = std::size_t{2} << m.s;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t x = 0; x < m.angles.size(); ++x) {
    out.block<2, 2>(2 * x, 2 * x) = axis_rotation(m.axis, m.angles[x]);
  }
  return out;
}

Eigen::MatrixXcd multiplexor1_matrix(const Multiplexor1 &m) {
  m.validate();
  const std::size_t dim = std::size_t{2} << m.s;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t x = 0; x < m.blocks.size(); ++x) {
    out.block<2, 2>(2 * x, 2 * x) = m.blocks[x];
  }
  return out;
}

void emit_multiplexed_rotation(Circuit &circ, const MultiplexedRotation &m,
                               const std::vector<std::uint32_t> &selects,
                               std::uint32_t data) {
  m.validate();
  if (selects.size() != m.s) {
    throw std::invalid_argument("select qubit count does not match");
  }
  if (m.axis == RotationAxis::X) {
    MultiplexedRotation z{RotationAxis::Z, m.s, m.angles};
    for (double &a : z.angles) a = -a;
    circ.u2(data, hadamard());
    emit_multiplexed_rotation(circ, z, selects, data);
    circ.u2(data, hadamard());
    return;
  }
  auto rotate = [&](double angle) {
    if (m.axis == RotationAxis::Y) {
      circ.ry(data, angle);
    } else {
      circ.rz(data, angle);
    }
  };
  if (m.s == 0) {
    rotate(m.angles[0]);
    return;
  }
  std::vector<double> hat = m.angles;
  walsh_hadamard(hat);
  const double scale = 1.0 / static_cast<double>(std::size_t{1} << m.s);
  const std::size_t count = std::size_t{1} << m.s;
  for (std::size_t j = 0; j < count; ++j) {
    rotate(hat[gray(j)] * scale);
    const unsigned pos = (j + 1 == count)
                             ? m.s - 1
                             : static_cast<unsigned>(std::countr_zero(j + 1));
    circ.cnot(selects[m.s - 1 - pos], data);
  }
}

Circuit synth_multiplexed_rotation(const MultiplexedRotation &m) {
  Circuit c;
  std::vector<std::uint32_t> selects;
  if (m.s > 0) {
    c.add_register("sel", m.s);
    selects = c.register_qubits("sel");
  }
  c.add_register("d", 1);
  emit_multiplexed_rotation(c, m, selects, c.qubit("d"));
  return c;
}

DiagonalPeel diagonal_to_multiplexed_rz(const PhaseFunction &f) {
  f.validate();
  if (f.n == 0) {
    throw std::invalid_argument("cannot peel a 0-bit phase table");
  }
  const std::size_t half = f.angles.size() / 2;
  DiagonalPeel out;
  out.rotation = MultiplexedRotation{RotationAxis::Z, f.n - 1,
                                     std::vector<double>(half)};
  out.residual = PhaseFunction{f.n - 1, std::vector<double>(half)};
  for (std::size_t x = 0; x < half; ++x) {
    const double a = f.angles[2 * x], b = f.angles[2 * x + 1];
    out.rotation.angles[x] = b - a;
    out.residual.angles[x] = (a + b) / 2;
  }
  return out;
}

void emit_diagonal(Circuit &circ, const PhaseFunction &f,
                   const std::vector<std::uint32_t> &qubits) {
  f.validate();
  if (qubits.size() != f.n) {
    throw std::invalid_argument("qubit count does not match phase table");
  }
  PhaseFunction cur = f;
  while (cur.n > 0) {
    DiagonalPeel peel = diagonal_to_multiplexed_rz(cur);
    std::vector<std::uint32_t> selects(qubits.begin(),
                                       qubits.begin() + (cur.n - 1));
    emit_multiplexed_rotation(circ, peel.rotation, selects,
                              qubits[cur.n - 1]);
    cur = std::move(peel.residual);
  }
  circ.add_global_phase(cur.angles[0]);
}

Circuit synth_diagonal_single(const PhaseFunction &f) {
  Circuit c;
  c.add_register("q", std::max<std::uint32_t>(f.n, 1));
  emit_diagonal(c, f, f.n == 0 ? std::vector<std::uint32_t>{}
                               : c.register_qubits("q"));
  return c;
}

ZYZAngles zyz_decompose(const Eigen::Matrix2cd &u) {
  if (!is_unitary(u, UNITARY_EPS)) {
    throw std::invalid_argument("zyz input is not unitary");
  }
  const double cos_half = (std::abs(u(0, 0)) + std::abs(u(1, 1))) / 2;
  const double sin_half = (std::abs(u(0, 1)) + std::abs(u(1, 0))) / 2;
  ZYZAngles out;
  out.beta = 2 * std::atan2(sin_half, cos_half);
  if (sin_half == 0.0) {
    // Diagonal: gamma folds into alpha.
    out.alpha = std::arg(u(1, 1)) - std::arg(u(0, 0));
    out.phi = (std::arg(u(0, 0)) + std::arg(u(1, 1))) / 2;
    out.beta = 0;
    return out;
  }
  if (cos_half == 0.0) {
    // Antidiagonal: u = e^{i phi} Rz(alpha) Ry(pi).
    out.alpha = std::arg(-u(1, 0)) - std::arg(u(0, 1));
    out.phi = (std::arg(u(0, 1)) + std::arg(-u(1, 0))) / 2;
    out.beta = std::numbers::pi;
    return out;
  }
  out.gamma = std::arg(u(0, 1)) - std::arg(u(0, 0));
  out.alpha = std::arg(u(1, 1)) - std::arg(u(0, 1));
  out.phi = std::arg(u(0, 0)) + out.alpha / 2 + out.gamma / 2;
  return out;
}

Eigen::Matrix2cd zyz_reconstruct(const ZYZAngles &a) {
  return std::exp(I_UNIT * a.phi) * rz_matrix(a.alpha) * ry_matrix(a.beta) *
         rz_matrix(a.gamma);
}

DemuxResult demultiplex_1data(const Multiplexor1 &m) {
  m.validate();
  const std::size_t count = m.blocks.size();
  DemuxResult out;
  out.delta = PhaseFunction{m.s, std::vector<double>(count)};
  out.rz1 = MultiplexedRotation{RotationAxis::Z, m.s,
                                std::vector<double>(count)};
  out.ry =
      MultiplexedRotation{RotationAxis::Y, m.s, std::vector<double>(count)};
  out.rz2 = MultiplexedRotation{RotationAxis::Z, m.s,
                                std::vector<double>(count)};
  for (std::size_t x = 0; x < count; ++x) {
    const ZYZAngles a = zyz_decompose(m.blocks[x]);
    out.delta.angles[x] = a.phi;
    out.rz1.angles[x] = a.alpha;
    out.ry.angles[x] = a.beta;
    out.rz2.angles[x] = a.gamma;
  }
  return out;
}

CSDResult cosine_sine_decompose(const Eigen::MatrixXcd &u) {
  const Eigen::Index dim = u.rows();
  if (dim != u.cols() || dim < 2 || dim % 2 != 0) {
    throw std::invalid_argument("cosine-sine input must be even-dimensional");
  }
  if (!is_unitary(u, 1e-10)) {
    throw std::invalid_argument("cosine-sine input is not unitary");
  }
  const Eigen::Index p = dim / 2;
  const Eigen::MatrixXcd u00 = u.topLeftCorner(p, p);
  const Eigen::MatrixXcd u01 = u.topRightCorner(p, p);
  const Eigen::MatrixXcd u10 = u.bottomLeftCorner(p, p);
  const Eigen::MatrixXcd u11 = u.bottomRightCorner(p, p);

  // Cosines from the SVD of the upper-left block, sorted ascending so the
  // well-conditioned (large sine) columns come first.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      u00, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd l1 = svd.matrixU().rowwise().reverse();
  Eigen::MatrixXcd r1 =
      svd.matrixV().rowwise().reverse().adjoint();  // u00 = l1 * C * r1
  Eigen::MatrixXcd cmat = Eigen::MatrixXcd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    cmat(j, j) = std::min(1.0, svd.singularValues()(p - 1 - j));
  }

  // W = -u10 * r1^dagger equals L2 * S; take an orthonormal basis of the
  // strongly sine-dominated columns and repair the rest jointly.
  const Eigen::MatrixXcd w = -u10 * r1.adjoint();
  Eigen::Index k_split = 0;
  while (k_split < p && cmat(k_split, k_split).real() <= std::numbers::sqrt2 / 2) {
    ++k_split;
  }
  Eigen::MatrixXcd l2;
  if (k_split > 0) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(w.leftCols(k_split));
    l2 = qr.householderQ();
  } else {
    l2 = Eigen::MatrixXcd::Identity(p, p);
  }
  Eigen::MatrixXcd smat = l2.adjoint() * w;

  if (k_split < p) {
    // Joint re-orthonormalization of the degenerate (small sine) tail.
    const Eigen::Index q = p - k_split;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd2(
        smat.block(k_split, k_split, q, q),
        Eigen::ComputeFullU | Eigen::ComputeFullV);
    smat.block(0, k_split, p, q) *= svd2.matrixV();
    smat.block(k_split, k_split, q, q) =
        svd2.singularValues().asDiagonal().toDenseMatrix().cast<Complex>();
    l2.block(0, k_split, p, q) *= svd2.matrixU();
    cmat.block(0, k_split, p, q) *= svd2.matrixV();
    r1.block(k_split, 0, q, p) =
        svd2.matrixV().adjoint() * r1.block(k_split, 0, q, p);
    // Restore the cosine block to (nearly) diagonal form, rotating l1.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr2(cmat.block(k_split, k_split, q, q));
    cmat.block(k_split, k_split, q, q) =
        qr2.matrixQR().triangularView<Eigen::Upper>();
    l1.block(0, k_split, p, q) *= qr2.householderQ();
  }

  // Make both diagonals real and nonnegative by pushing phases into l1/l2.
  for (Eigen::Index j = 0; j < p; ++j) {
    const Complex cj = cmat(j, j);
    if (std::abs(cj) > 0) {
      const Complex ph = cj / std::abs(cj);
      l1.col(j) *= ph;
      cmat.row(j) *= std::conj(ph);
    }
    const Complex sj = smat(j, j);
    if (std::abs(sj) > 0) {
      const Complex ph = sj / std::abs(sj);
      l2.col(j) *= ph;
      smat.row(j) *= std::conj(ph);
    }
  }

  CSDResult out;
  out.l1 = l1;
  out.l2 = l2;
  out.r1 = r1;
  out.theta.resize(p);
  out.r2 = Eigen::MatrixXcd::Zero(p, p);
  const Eigen::MatrixXcd ys = l1.adjoint() * u01;  // = S * r2
  const Eigen::MatrixXcd yc = l2.adjoint() * u11;  // = C * r2
  for (Eigen::Index j = 0; j < p; ++j) {
    const double cj = cmat(j, j).real();
    const double sj = smat(j, j).real();
    out.theta[j] = 2 * std::atan2(sj, cj);
    if (sj > cj) {
      out.r2.row(j) = ys.row(j) / sj;
    } else {
      out.r2.row(j) = yc.row(j) / cj;
    }
  }
  return out;
}

MultiplexedRotation QsdFactor::as_rotation() const {
  if (kind != Kind::RotY) {
    throw std::logic_error("factor is not a multiplexed rotation");
  }
  const auto s = static_cast<std::uint32_t>(std::bit_width(ry_angles.size()) - 1);
  return MultiplexedRotation{RotationAxis::Y, s, ry_angles};
}

namespace {

void qsd_recurse(std::uint32_t n, std::uint32_t s,
                 std::vector<Eigen::MatrixXcd> blocks,
                 std::vector<QsdFactor> &out) {
  const std::uint32_t d = n - s;
  if (d == 1) {
    QsdFactor leaf;
    leaf.kind = QsdFactor::Kind::Leaf;
    leaf.data_qubit = n - 1;
    leaf.leaf.s = s;
    leaf.leaf.blocks.resize(blocks.size());
    for (std::size_t x = 0; x < blocks.size(); ++x) {
      leaf.leaf.blocks[x] = blocks[x];
    }
    out.push_back(std::move(leaf));
    return;
  }
  const std::size_t zcount = std::size_t{1} << (d - 1);
  std::vector<Eigen::MatrixXcd> right(2 * blocks.size());
  std::vector<Eigen::MatrixXcd> left(2 * blocks.size());
  std::vector<double> ry_angles(blocks.size() * zcount);
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    CSDResult csd = cosine_sine_decompose(blocks[x]);
    right[2 * x] = std::move(csd.r1);
    right[2 * x + 1] = std::move(csd.r2);
    left[2 * x] = std::move(csd.l1);
    left[2 * x + 1] = std::move(csd.l2);
    for (std::size_t z = 0; z < zcount; ++z) {
      ry_angles[x * zcount + z] = csd.theta[z];
    }
  }
  qsd_recurse(n, s + 1, std::move(right), out);
  QsdFactor rot;
  rot.kind = QsdFactor::Kind::RotY;
  rot.data_qubit = s;
  rot.ry_angles = std::move(ry_angles);
  out.push_back(std::move(rot));
  qsd_recurse(n, s + 1, std::move(left), out);
}

}  // namespace

std::vector<QsdFactor> qsd_factorize(const Eigen::MatrixXcd &u) {
  const std::size_t dim = u.rows();
  if (dim < 2 || !std::has_single_bit(dim) ||
      static_cast<std::size_t>(u.cols()) != dim) {
    throw std::invalid_argument("unitary dimension must be a power of two");
  }
  if (!is_unitary(u, 1e-10)) {
    throw std::invalid_argument("input is not unitary");
  }
  const auto n = static_cast<std::uint32_t>(std::bit_width(dim) - 1);
  std::vector<QsdFactor> out;
  qsd_recurse(n, 0, {u}, out);
  return out;
}

void emit_qsd_factor(Circuit &circ, const QsdFactor &factor,
                     const std::vector<std::uint32_t> &qubits) {
  std::vector<std::uint32_t> selects;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i != factor.data_qubit) selects.push_back(qubits[i]);
  }
  const std::uint32_t data = qubits[factor.data_qubit];
  if (factor.kind == QsdFactor::Kind::RotY) {
    emit_multiplexed_rotation(circ, factor.as_rotation(), selects, data);
    return;
  }
  if (factor.leaf.s == 0) {
    circ.u2(data, factor.leaf.blocks[0]);
    return;
  }
  const DemuxResult dm = demultiplex_1data(factor.leaf);
  emit_multiplexed_rotation(circ, dm.rz2, selects, data);
  emit_multiplexed_rotation(circ, dm.ry, selects, data);
  emit_multiplexed_rotation(circ, dm.rz1, selects, data);
  emit_diagonal(circ, dm.delta, selects);
}

Circuit qsd_synthesize(const Eigen::MatrixXcd &u) {
  const std::vector<QsdFactor> factors = qsd_factorize(u);
  const auto n =
      static_cast<std::uint32_t>(std::bit_width(std::size_t(u.rows())) - 1);
  Circuit c;
  c.add_register("q", n);
  const std::vector<std::uint32_t> qubits = c.register_qubits("q");
  for (const QsdFactor &f : factors) emit_qsd_factor(c, f, qubits);
  return c;
}

StatePrepSchedule state_prep_angles(const Eigen::VectorXcd &psi) {
  const std::size_t dim = psi.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("state dimension must be a power of two");
  }
  if (psi.norm() == 0.0) {
    throw std::invalid_argument("state has zero norm");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state is not normalized");
  }
  const auto n = static_cast<std::uint32_t>(std::bit_width(dim) - 1);
  StatePrepSchedule out;
  out.ry_angles.resize(n);
  out.rz_angles.resize(n);
  std::vector<Complex> cur(psi.data(), psi.data() + dim);
  for (std::uint32_t level = n; level-- > 0;) {
    const std::size_t half = std::size_t{1} << level;
    out.ry_angles[level].resize(half);
    out.rz_angles[level].resize(half);
    std::vector<Complex> parent(half);
    for (std::size_t x = 0; x < half; ++x) {
      const Complex a = cur[2 * x], b = cur[2 * x + 1];
      const double ra = std::abs(a), rb = std::abs(b);
      double phi = 0, beta = 0;
      if (ra == 0.0 && rb == 0.0) {
        parent[x] = Complex(0, 0);
      } else {
        phi = std::arg(a) - std::arg(b);
        beta = 2 * std::atan2(rb, ra);
        const double omega = (std::arg(a) + std::arg(b)) / 2;
        parent[x] = std::polar(std::hypot(ra, rb), omega);
      }
      // The stored schedule prepares the state, so it is the adjoint of the
      // disentangling rotations.
      out.rz_angles[level][x] = -phi;
      out.ry_angles[level][x] = -beta;
    }
    cur = std::move(parent);
  }
  out.global_phase = std::arg(cur[0]);
  return out;
}

Circuit synth_state_prep_single(const Eigen::VectorXcd &psi) {
  const StatePrepSchedule sched = state_prep_angles(psi);
  const auto n = static_cast<std::uint32_t>(sched.ry_angles.size());
  Circuit c;
  c.add_register("q", n);
  const std::vector<std::uint32_t> q = c.register_qubits("q");
  c.add_global_phase(sched.global_phase);
  for (std::uint32_t level = 0; level < n; ++level) {
    const std::vector<std::uint32_t> selects(q.begin(), q.begin() + level);
    emit_multiplexed_rotation(
        c, MultiplexedRotation{RotationAxis::Y, level, sched.ry_angles[level]},
        selects, q[level]);
    emit_multiplexed_rotation(
        c, MultiplexedRotation{RotationAxis::Z, level, sched.rz_angles[level]},
        selects, q[level]);
  }
  return c;
}

}  // namespace qmp
