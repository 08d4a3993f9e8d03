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

#include "qmp/dense.hpp"

#include <cmath>
#include <thread>

#include "qmp/kernels.hpp"
#include "qmp/random.hpp"

namespace qmp {

StateVector StateVector::zero_state(std::uint32_t m) {
  StateVector s;
  s.num_qubits = m;
  s.amp.assign(std::size_t{1} << m, Complex(0, 0));
  s.amp[0] = Complex(1, 0);
  return s;
}

StateVector StateVector::basis(const BasisState &b) {
  StateVector s;
  s.num_qubits = b.size();
  s.amp.assign(std::size_t{1} << b.size(), Complex(0, 0));
  std::size_t idx = 0;
  for (std::uint32_t q = 0; q < b.size(); ++q) {
    idx = (idx << 1) | (b.bit(q) ? 1 : 0);
  }
  s.amp[idx] = Complex(1, 0);
  return s;
}

double StateVector::norm() const {
  double n2 = 0;
  for (const Complex &a : amp) n2 += std::norm(a);
  return std::sqrt(n2);
}

namespace {

inline std::size_t qubit_stride(std::uint32_t m, std::uint32_t q) {
  return std::size_t{1} << (m - 1 - q);
}

void apply_gate(const Gate &g, std::uint32_t m, Complex *amp,
                std::size_t size, const kernels::KernelTable &kt) {
  switch (g.kind) {
    case GateKind::X: {
      const std::size_t t = qubit_stride(m, g.q[0]);
      for (std::size_t i = 0; i < size; ++i) {
        if (!(i & t)) std::swap(amp[i], amp[i | t]);
      }
      break;
    }
    case GateKind::CNOT:
      kt.apply_cnot(amp, size, qubit_stride(m, g.q[0]),
                    qubit_stride(m, g.q[1]));
      break;
    case GateKind::Toffoli: {
      const std::size_t c0 = qubit_stride(m, g.q[0]);
      const std::size_t c1 = qubit_stride(m, g.q[1]);
      const std::size_t t = qubit_stride(m, g.q[2]);
      for (std::size_t i = 0; i < size; ++i) {
        if ((i & c0) && (i & c1) && !(i & t)) std::swap(amp[i], amp[i | t]);
      }
      break;
    }
    case GateKind::Fredkin: {
      const std::size_t c = qubit_stride(m, g.q[0]);
      const std::size_t a = qubit_stride(m, g.q[1]);
      const std::size_t b = qubit_stride(m, g.q[2]);
      for (std::size_t i = 0; i < size; ++i) {
        if ((i & c) && (i & a) && !(i & b)) {
          std::swap(amp[i], amp[(i ^ a) | b]);
        }
      }
      break;
    }
    case GateKind::Swap: {
      const std::size_t a = qubit_stride(m, g.q[0]);
      const std::size_t b = qubit_stride(m, g.q[1]);
      for (std::size_t i = 0; i < size; ++i) {
        if ((i & a) && !(i & b)) std::swap(amp[i], amp[(i ^ a) | b]);
      }
      break;
    }
    case GateKind::Rz: {
      const Complex p0 = std::exp(Complex(0, -g.params[0] / 2));
      const Complex p1 = std::exp(Complex(0, g.params[0] / 2));
      kt.apply_diag1(amp, size, qubit_stride(m, g.q[0]), p0, p1);
      break;
    }
    case GateKind::Diag2: {
      const std::size_t s0 = qubit_stride(m, g.q[0]);
      const std::size_t s1 = qubit_stride(m, g.q[1]);
      const Complex ph[4] = {std::exp(Complex(0, g.params[0])),
                             std::exp(Complex(0, g.params[1])),
                             std::exp(Complex(0, g.params[2])),
                             std::exp(Complex(0, g.params[3]))};
      for (std::size_t i = 0; i < size; ++i) {
        amp[i] *= ph[2 * ((i & s0) != 0) + ((i & s1) != 0)];
      }
      break;
    }
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::U2: {
      const Eigen::Matrix2cd u = single_qubit_matrix(g);
      const Complex uu[4] = {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
      kt.apply_1q(amp, size, qubit_stride(m, g.q[0]), uu);
      break;
    }
  }
}

}  // namespace

StateVector apply_dense(const Circuit &circuit, StateVector state,
                        std::uint32_t cap) {
  const std::uint32_t m = circuit.num_qubits();
  if (m > cap) {
    throw CircuitError("dense engine qubit cap exceeded: " +
                       std::to_string(m) + " > " + std::to_string(cap));
  }
  if (state.num_qubits != m) {
    throw CircuitError("state size does not match circuit");
  }
  const auto &kt = kernels::active_kernels();
  const std::size_t size = state.amp.size();
  for (const Gate &g : circuit.gates()) {
    apply_gate(g, m, state.amp.data(), size, kt);
  }
  if (circuit.global_phase() != 0.0) {
    kt.scale(state.amp.data(), size,
             std::exp(Complex(0, circuit.global_phase())));
  }
  return state;
}

Eigen::MatrixXcd circuit_unitary(const Circuit &circuit, std::uint32_t cap) {
  const std::uint32_t m = circuit.num_qubits();
  if (m > cap) {
    throw CircuitError("unitary extraction qubit cap exceeded");
  }
  const std::size_t dim = std::size_t{1} << m;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector col = StateVector::zero_state(m);
    col.amp[0] = Complex(0, 0);
    col.amp[j] = Complex(1, 0);
    col = apply_dense(circuit, std::move(col), cap);
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = col.amp[i];
  }
  return u;
}

PhaseComparison equal_up_to_global_phase(const Eigen::MatrixXcd &a,
                                         const Eigen::MatrixXcd &b,
                                         double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("dimension mismatch in phase comparison");
  }
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  PhaseComparison out;
  if (std::abs(b(r, c)) == 0.0) {
    out.max_deviation = a.cwiseAbs().maxCoeff();
    out.equal = out.max_deviation <= tol;
    return out;
  }
  Complex lambda = a(r, c) / b(r, c);
  const double mag = std::abs(lambda);
  lambda = mag == 0.0 ? Complex(1, 0) : lambda / mag;
  out.phase = lambda;
  out.max_deviation = (a - lambda * b).cwiseAbs().maxCoeff();
  out.equal = out.max_deviation <= tol;
  return out;
}

namespace {

std::vector<std::uint32_t> logical_qubit_list(const Circuit &c) {
  std::vector<std::uint32_t> out;
  std::uint32_t off = 0;
  for (const Register &r : c.registers()) {
    if (r.role == RegisterRole::Logical) {
      for (std::uint32_t i = 0; i < r.width; ++i) out.push_back(off + i);
    }
    off += r.width;
  }
  return out;
}

}  // namespace

VerifyReport verify_ancilla_restoration(const Circuit &circuit,
                                        std::int64_t trials,
                                        std::uint64_t seed,
                                        std::uint32_t dense_cap) {
  VerifyReport report;
  const std::vector<std::uint32_t> logical = logical_qubit_list(circuit);
  const std::uint32_t m = circuit.num_qubits();
  const bool classical = is_phase_classical(circuit);
  report.mode = classical ? "phase-path" : "dense";

  std::vector<std::uint64_t> inputs;
  const std::uint32_t nl = static_cast<std::uint32_t>(logical.size());
  if (trials <= 0 || (nl < 63 && trials >= (std::int64_t{1} << nl))) {
    inputs.resize(std::size_t{1} << nl);
    for (std::size_t v = 0; v < inputs.size(); ++v) inputs[v] = v;
  } else {
    CounterRng rng(seed, "ancilla-restoration");
    for (std::int64_t i = 0; i < trials; ++i) {
      inputs.push_back(nl >= 64 ? rng.next_u64()
                                : rng.next_u64() & ((std::uint64_t{1} << nl) - 1));
    }
  }

  for (std::uint64_t v : inputs) {
    BasisState in(m);
    for (std::uint32_t i = 0; i < nl; ++i) {
      in.set_bit(logical[i], (v >> (nl - 1 - i)) & 1);
    }
    ++report.checked;
    if (classical) {
      const BasisPath out = simulate_phase_path(circuit, in);
      for (std::uint32_t q = 0; q < m; ++q) {
        if (circuit.is_ancilla(q) && out.state.bit(q)) {
          report.failures.push_back(
              {in.to_string(), Complex(1, 0), Complex(1, 0),
               "ancilla qubit " + std::to_string(q) + " not restored"});
          break;
        }
      }
    } else {
      if (m > dense_cap) {
        throw CircuitError(
            "circuit needs dense ancilla verification but exceeds the cap");
      }
      StateVector out = apply_dense(circuit, StateVector::basis(in), dense_cap);
      double leak2 = 0;
      for (std::size_t i = 0; i < out.amp.size(); ++i) {
        bool anc_zero = true;
        for (std::uint32_t q = 0; q < m && anc_zero; ++q) {
          if (circuit.is_ancilla(q) && (i >> (m - 1 - q)) & 1) {
            anc_zero = false;
          }
        }
        if (!anc_zero) leak2 += std::norm(out.amp[i]);
      }
      if (leak2 > 1e-9) {
        report.failures.push_back({in.to_string(), Complex(1, 0),
                                   Complex(1, 0),
                                   "ancilla leak probability " +
                                       std::to_string(leak2)});
      }
    }
    if (!report.failures.empty()) break;  // first witness is enough
  }
  return report;
}

RestrictedOperator restricted_operator(
    const Circuit &circuit, const std::vector<std::uint32_t> &logical_qubits,
    const std::vector<std::uint64_t> &columns, std::uint32_t cap) {
  const std::uint32_t m = circuit.num_qubits();
  const std::uint32_t nl = static_cast<std::uint32_t>(logical_qubits.size());
  const std::size_t dim = std::size_t{1} << nl;
  RestrictedOperator out;
  out.op = Eigen::MatrixXcd::Zero(dim, columns.size());

  // Map each full-space index to its logical-subspace index, or flag it as
  // leaking. Positions of the logical qubits inside the full index:
  std::vector<std::uint32_t> shifts(nl);
  std::size_t logical_mask = 0;
  for (std::uint32_t i = 0; i < nl; ++i) {
    shifts[i] = m - 1 - logical_qubits[i];
    logical_mask |= std::size_t{1} << shifts[i];
  }

  std::vector<std::size_t> embed(dim);
  for (std::size_t v = 0; v < dim; ++v) {
    std::size_t idx = 0;
    for (std::uint32_t i = 0; i < nl; ++i) {
      if ((v >> (nl - 1 - i)) & 1) idx |= std::size_t{1} << shifts[i];
    }
    embed[v] = idx;
  }

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(hw, columns.size()));
  std::vector<double> leaks(workers, 0.0);
  auto run_range = [&](unsigned w, std::size_t lo, std::size_t hi) {
    for (std::size_t ci = lo; ci < hi; ++ci) {
      StateVector in = StateVector::zero_state(m);
      in.amp[0] = Complex(0, 0);
      in.amp[embed[columns[ci]]] = Complex(1, 0);
      StateVector res = apply_dense(circuit, std::move(in), cap);
      for (std::size_t i = 0; i < res.amp.size(); ++i) {
        if ((i & ~logical_mask) != 0) {
          leaks[w] = std::max(leaks[w], std::abs(res.amp[i]));
        }
      }
      for (std::size_t v = 0; v < dim; ++v) {
        out.op(v, ci) = res.amp[embed[v]];
      }
    }
  };
  if (workers <= 1) {
    run_range(0, 0, columns.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (columns.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(columns.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, w, lo, hi);
    }
    for (std::thread &t : pool) t.join();
  }
  for (double l : leaks) out.max_leak = std::max(out.max_leak, l);
  return out;
}

}  // namespace qmp
