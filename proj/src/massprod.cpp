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

#include "qmp/massprod.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "qmp/random.hpp"

namespace qmp {

namespace {

std::uint32_t ceil_log2(std::uint64_t v) {
  return v <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(v - 1));
}

void emit_adjoint_of_range(Circuit &c, std::size_t begin, std::size_t end) {
  const std::vector<Gate> snapshot(c.gates().begin() + begin,
                                   c.gates().begin() + end);
  for (auto it = snapshot.rbegin(); it != snapshot.rend(); ++it) {
    c.add(adjoint(*it));
  }
}

std::int64_t range_cnots(const Circuit &c, std::size_t begin,
                         std::size_t end) {
  Circuit scratch;
  scratch.add_register("q", c.num_qubits());
  for (std::size_t i = begin; i < end; ++i) scratch.add(c.gates()[i]);
  return cnot_count(scratch);
}

// target ^= 1{value(v) < ell} for the classical constant 1 <= ell < 2^k,
// reading v most-significant-first. Walks a prefix-equality chain against
// the constant's bits; each 1-bit of the constant contributes the XOR of two
// adjacent chain qubits. Work qubits are uncomputed in place.
void emit_less_than_const(Circuit &c, const std::vector<std::uint32_t> &v,
                          std::uint32_t ell, std::uint32_t target,
                          const std::vector<std::uint32_t> &work) {
  const std::uint32_t k = static_cast<std::uint32_t>(v.size());
  auto bit_of = [&](std::uint32_t i) { return (ell >> (k - 1 - i)) & 1u; };
  std::uint32_t j_max = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (bit_of(i)) j_max = i;
  }
  const auto chain = [&](bool forward) {
    const auto step0 = [&] {
      c.cnot(v[0], work[0]);
      if (!bit_of(0)) c.x(work[0]);
    };
    const auto step = [&](std::uint32_t i) {
      if (bit_of(i)) {
        c.toffoli(work[i - 1], v[i], work[i]);
      } else {
        c.x(v[i]);
        c.toffoli(work[i - 1], v[i], work[i]);
        c.x(v[i]);
      }
    };
    if (forward) {
      step0();
      for (std::uint32_t i = 1; i <= j_max; ++i) step(i);
    } else {
      for (std::uint32_t i = j_max; i >= 1; --i) step(i);
      if (!bit_of(0)) c.x(work[0]);
      c.cnot(v[0], work[0]);
    }
  };
  chain(true);
  for (std::uint32_t i = 0; i <= j_max; ++i) {
    if (!bit_of(i)) continue;
    if (i == 0) {
      c.x(target);
      c.cnot(work[0], target);
    } else {
      c.cnot(work[i - 1], target);
      c.cnot(work[i], target);
    }
  }
  chain(false);
}

}  // namespace

void MassProdParams::validate() const {
  if (k < 1 || t < 1 || n <= k * t) {
    throw DomainError("replication parameters need k >= 1, t >= 1, n > k*t");
  }
}

double cost_bound(const MassProdParams &p) {
  p.validate();
  const double slots = static_cast<double>((std::uint64_t{1} << p.k) + 1);
  const double leaf = std::pow(2.0, static_cast<double>(p.n) -
                                        static_cast<double>(p.t) * p.k);
  const double plumbing = std::pow(2.0, p.t) * static_cast<double>(p.d) * p.n;
  return std::pow(slots, p.t) * (leaf + plumbing);
}

GSequence derive_g_sequence(const PhaseFunction &f, std::uint32_t k) {
  f.validate();
  if (k < 1 || k >= f.n) {
    throw DomainError("prefix width must satisfy 1 <= k < n");
  }
  const std::size_t chunk = std::size_t{1} << (f.n - k);
  const std::size_t parts = std::size_t{1} << k;
  GSequence out;
  out.k = k;
  out.g.reserve(parts + 1);
  for (std::size_t ell = 0; ell <= parts; ++ell) {
    PhaseFunction g{f.n - k, std::vector<double>(chunk)};
    for (std::size_t z = 0; z < chunk; ++z) {
      if (ell == 0) {
        g.angles[z] = f.angles[z];
      } else if (ell == parts) {
        g.angles[z] = -f.angles[(parts - 1) * chunk + z];
      } else {
        g.angles[z] =
            f.angles[ell * chunk + z] - f.angles[(ell - 1) * chunk + z];
      }
    }
    out.g.push_back(std::move(g));
  }
  return out;
}

void emit_comparator(Circuit &c, const std::vector<std::uint32_t> &x,
                     const std::vector<std::uint32_t> &y, std::uint32_t flag,
                     const std::vector<std::uint32_t> &work) {
  const std::uint32_t n = static_cast<std::uint32_t>(x.size());
  if (y.size() != n || work.size() < n || n == 0) {
    throw CircuitError("comparator operand widths mismatch");
  }
  // y_i <- 1{x_i == y_i}
  for (std::uint32_t i = 0; i < n; ++i) {
    c.cnot(x[i], y[i]);
    c.x(y[i]);
  }
  // prefix-equality chain: work[i] holds "bits 0..i all equal"
  const auto chain = [&](bool forward) {
    if (forward) {
      c.cnot(y[0], work[0]);
      for (std::uint32_t i = 1; i < n; ++i) {
        c.toffoli(work[i - 1], y[i], work[i]);
      }
    } else {
      for (std::uint32_t i = n - 1; i >= 1; --i) {
        c.toffoli(work[i - 1], y[i], work[i]);
      }
      c.cnot(y[0], work[0]);
    }
  };
  chain(true);
  // flag ^= OR_i (prefix equal before i) & x_i & !y_i, telescoped to CNOT
  // pairs on adjacent chain qubits.
  c.cnot(x[0], flag);
  c.toffoli(x[0], work[0], flag);
  for (std::uint32_t i = 1; i < n; ++i) {
    c.toffoli(x[i], work[i - 1], flag);
    c.toffoli(x[i], work[i], flag);
  }
  chain(false);
  for (std::uint32_t i = 0; i < n; ++i) {
    c.x(y[i]);
    c.cnot(x[i], y[i]);
  }
}

Circuit build_comparator(std::uint32_t n) {
  Circuit c;
  c.add_register("x", n);
  c.add_register("y", n);
  c.add_register("flag", 1, RegisterRole::Ancilla);
  c.add_register("w", n, RegisterRole::Ancilla);
  emit_comparator(c, c.register_qubits("x"), c.register_qubits("y"),
                  c.qubit("flag"), c.register_qubits("w"));
  return c;
}

void emit_threshold(Circuit &c, std::uint32_t k, std::uint32_t ell,
                    const std::vector<std::uint32_t> &m_prefix,
                    const std::vector<std::uint32_t> &big_m_prefix,
                    std::uint32_t a, std::uint32_t b,
                    const std::vector<std::uint32_t> &work) {
  if (m_prefix.size() != k || big_m_prefix.size() != k || work.size() < k) {
    throw CircuitError("threshold operand widths mismatch");
  }
  if (ell > (std::uint32_t{1} << k)) {
    throw DomainError("threshold constant out of range");
  }
  if (ell == 0) {
    c.x(a);  // every prefix passes; the strict test never fires
    return;
  }
  if (ell == (std::uint32_t{1} << k)) {
    c.x(b);
    return;
  }
  emit_less_than_const(c, m_prefix, ell, a, work);
  c.x(a);
  emit_less_than_const(c, big_m_prefix, ell, b, work);
}

Circuit build_threshold(std::uint32_t n, std::uint32_t k, std::uint32_t ell) {
  if (k < 1 || k > n) throw DomainError("threshold needs 1 <= k <= n");
  Circuit c;
  c.add_register("a", 1);
  c.add_register("b", 1);
  c.add_register("m", n);
  c.add_register("M", n);
  c.add_register("w", k, RegisterRole::Ancilla);
  std::vector<std::uint32_t> m = c.register_qubits("m");
  std::vector<std::uint32_t> big = c.register_qubits("M");
  m.resize(k);
  big.resize(k);
  emit_threshold(c, k, ell, m, big, c.qubit("a"), c.qubit("b"),
                 c.register_qubits("w"));
  return c;
}

void emit_star_gate(Circuit &c, std::uint32_t a, std::uint32_t b,
                    double delta) {
  if (delta == 0.0) return;
  c.diag2(a, b, {delta, 0, 0, 0});
}

Circuit build_star_gate(double delta) {
  Circuit c;
  c.add_register("a", 1);
  c.add_register("b", 1);
  emit_star_gate(c, c.qubit("a"), c.qubit("b"), delta);
  return c;
}

MassPoolSpec MassPoolSpec::for_params(std::uint32_t n, std::uint32_t k,
                                      std::uint32_t t) {
  MassProdParams{n, k, t, COST_MODEL_D}.validate();
  MassPoolSpec spec;
  for (std::uint32_t d = 0; d < t; ++d) {
    const std::uint32_t nd = n - d * k;
    spec.levels.push_back(Level{std::uint32_t{1} << (t - 1 - d), nd - k, nd,
                                k});
  }
  return spec;
}

void MassPoolSpec::merge(const MassPoolSpec &other) {
  if (other.levels.size() > levels.size()) {
    levels.resize(other.levels.size());
  }
  for (std::size_t i = 0; i < other.levels.size(); ++i) {
    levels[i].copies = std::max(levels[i].copies, other.levels[i].copies);
    levels[i].z_width = std::max(levels[i].z_width, other.levels[i].z_width);
    levels[i].w_width = std::max(levels[i].w_width, other.levels[i].w_width);
    levels[i].tw_width =
        std::max(levels[i].tw_width, other.levels[i].tw_width);
  }
}

std::uint32_t MassPoolSpec::total_qubits() const {
  std::uint32_t total = 0;
  for (const Level &l : levels) {
    total += l.copies * (l.z_width + 4) + l.w_width + l.tw_width;
  }
  return total;
}

MassPool declare_pool(Circuit &circ, const MassPoolSpec &spec,
                      const std::string &prefix) {
  MassPool pool;
  for (std::size_t d = 0; d < spec.levels.size(); ++d) {
    const auto &sl = spec.levels[d];
    MassPool::Level level;
    for (std::uint32_t j = 0; j < sl.copies; ++j) {
      const std::string base =
          prefix + "p" + std::to_string(d) + "u" + std::to_string(j) + ".";
      MassPool::Group g;
      g.cmp = circ.add_register(base + "cmp", 1, RegisterRole::Ancilla);
      circ.add_register(base + "z", sl.z_width, RegisterRole::Ancilla);
      g.z = circ.register_qubits(base + "z");
      g.c = circ.add_register(base + "c", 1, RegisterRole::Ancilla);
      g.a = circ.add_register(base + "a", 1, RegisterRole::Ancilla);
      g.b = circ.add_register(base + "b", 1, RegisterRole::Ancilla);
      level.groups.push_back(std::move(g));
    }
    const std::string shared = prefix + "p" + std::to_string(d) + ".";
    circ.add_register(shared + "w", sl.w_width, RegisterRole::Ancilla);
    level.w = circ.register_qubits(shared + "w");
    circ.add_register(shared + "tw", sl.tw_width, RegisterRole::Ancilla);
    level.tw = circ.register_qubits(shared + "tw");
    pool.levels.push_back(std::move(level));
  }
  return pool;
}

MassProdTrace emit_mass_prod(Circuit &circ, const PhaseFunction &f,
                             std::uint32_t k, std::uint32_t t,
                             const std::vector<PairBinding> &pairs,
                             const MassPool &pool, std::uint32_t level) {
  f.validate();
  const std::uint32_t n = f.n;
  MassProdParams{n, k, t, COST_MODEL_D}.validate();
  if (pairs.size() != (std::size_t{1} << t)) {
    throw CircuitError("pair count must be 2^t");
  }
  for (const PairBinding &p : pairs) {
    if (p.input.size() != n) throw CircuitError("pair width mismatch");
  }
  if (level >= pool.levels.size()) throw CircuitError("pool too shallow");
  const MassPool::Level &pl = pool.levels[level];
  const std::uint32_t copies = std::uint32_t{1} << (t - 1);
  if (pl.groups.size() < copies || pl.w.size() < n || pl.tw.size() < k) {
    throw CircuitError("pool too small for this build");
  }

  MassProdTrace trace;
  trace.n = n;
  trace.k = k;
  trace.t = t;
  trace.pair_count = pairs.size();

  const std::vector<std::uint32_t> w(pl.w.begin(), pl.w.begin() + n);
  const std::vector<std::uint32_t> tw(pl.tw.begin(), pl.tw.begin() + k);

  // Order each pair and latch the comparison flag.
  std::vector<std::pair<std::size_t, std::size_t>> openers(copies);
  for (std::uint32_t j = 0; j < copies; ++j) {
    const PairBinding &px = pairs[2 * j];
    const PairBinding &py = pairs[2 * j + 1];
    const MassPool::Group &g = pl.groups[j];
    const std::size_t begin = circ.gates().size();
    emit_comparator(circ, px.input, py.input, g.cmp, w);
    for (std::uint32_t i = 0; i < n; ++i) {
      circ.fredkin(g.cmp, px.input[i], py.input[i]);
    }
    circ.fredkin(g.cmp, px.sign, py.sign);
    openers[j] = {begin, circ.gates().size()};
  }

  const GSequence gs = derive_g_sequence(f, k);
  const std::size_t slots = (std::size_t{1} << k) + 1;
  for (std::size_t ell = 0; ell < slots; ++ell) {
    // Prologue per copy: flags, suffix routing, conjugation-bit write.
    std::vector<std::pair<std::size_t, std::size_t>> pro(copies);
    for (std::uint32_t j = 0; j < copies; ++j) {
      const PairBinding &px = pairs[2 * j];
      const PairBinding &py = pairs[2 * j + 1];
      const MassPool::Group &g = pl.groups[j];
      const std::size_t begin = circ.gates().size();
      const std::vector<std::uint32_t> mp(px.input.begin(),
                                          px.input.begin() + k);
      const std::vector<std::uint32_t> bp(py.input.begin(),
                                          py.input.begin() + k);
      emit_threshold(circ, k, static_cast<std::uint32_t>(ell), mp, bp, g.a,
                     g.b, tw);
      for (std::uint32_t i = 0; i < n - k; ++i) {
        circ.toffoli(g.a, px.input[k + i], g.z[i]);
      }
      for (std::uint32_t i = 0; i < n - k; ++i) {
        circ.toffoli(g.b, py.input[k + i], g.z[i]);
      }
      circ.toffoli(g.a, px.sign, g.c);
      circ.x(py.sign);
      circ.toffoli(g.b, py.sign, g.c);
      circ.x(py.sign);
      pro[j] = {begin, circ.gates().size()};
    }

    // The phase slot itself: one multiplexed Rz at the base, one shared
    // recursive build serving every copy's (z, c) group otherwise.
    const PhaseFunction &gl = gs.g[ell];
    if (t == 1) {
      const MassPool::Group &g = pl.groups[0];
      MultiplexedRotation rot{RotationAxis::Z, n - k,
                              std::vector<double>(gl.angles.size())};
      for (std::size_t z = 0; z < gl.angles.size(); ++z) {
        rot.angles[z] = -2 * gl.angles[z];
      }
      const std::vector<std::uint32_t> selects(g.z.begin(),
                                               g.z.begin() + (n - k));
      emit_multiplexed_rotation(circ, rot, selects, g.c);
      trace.slots.push_back({static_cast<std::uint32_t>(ell), 1});
    } else {
      std::vector<PairBinding> child_pairs;
      child_pairs.reserve(copies);
      for (std::uint32_t j = 0; j < copies; ++j) {
        const MassPool::Group &g = pl.groups[j];
        child_pairs.push_back(PairBinding{
            std::vector<std::uint32_t>(g.z.begin(), g.z.begin() + (n - k)),
            g.c});
      }
      trace.children.push_back(
          emit_mass_prod(circ, gl, k, t - 1, child_pairs, pool, level + 1));
      trace.slots.push_back({static_cast<std::uint32_t>(ell), copies});
    }

    // Cancel the phase picked up by idle copies, then uncompute.
    for (std::uint32_t j = 0; j < copies; ++j) {
      emit_star_gate(circ, pl.groups[j].a, pl.groups[j].b, -gl.angles[0]);
    }
    for (std::uint32_t j = copies; j-- > 0;) {
      emit_adjoint_of_range(circ, pro[j].first, pro[j].second);
    }
  }

  for (std::uint32_t j = copies; j-- > 0;) {
    emit_adjoint_of_range(circ, openers[j].first, openers[j].second);
  }
  return trace;
}

MassBuild build_mass_prod(const PhaseFunction &f, std::uint32_t n,
                          std::uint32_t k, std::uint32_t t) {
  f.validate();
  if (f.n != n) throw DomainError("phase table size does not match n");
  MassBuild out;
  std::vector<PairBinding> pairs;
  for (std::uint32_t j = 0; j < (std::uint32_t{1} << t); ++j) {
    const std::string xr = "x" + std::to_string(j);
    const std::string cr = "c" + std::to_string(j);
    out.circuit.add_register(xr, n);
    out.circuit.add_register(cr, 1);
    pairs.push_back(
        PairBinding{out.circuit.register_qubits(xr), out.circuit.qubit(cr)});
    out.pair_registers.emplace_back(xr, cr);
  }
  const MassPool pool =
      declare_pool(out.circuit, MassPoolSpec::for_params(n, k, t), "w.");
  out.trace = emit_mass_prod(out.circuit, f, k, t, pairs, pool);
  return out;
}

MassBuild build_mass_prod_base(const PhaseFunction &f, std::uint32_t n,
                               std::uint32_t k) {
  return build_mass_prod(f, n, k, 1);
}

KtChoice select_kt(std::uint32_t n, std::uint32_t r) {
  KtChoice out;
  out.t = std::max<std::uint32_t>(1, ceil_log2(r));
  for (std::uint32_t k = ceil_log2(n); k >= 1; --k) {
    if (n > k * out.t) {
      out.k = k;
      out.feasible = true;
      return out;
    }
  }
  // ceil_log2(n) can be 0 for n = 1; the loop above never ran then.
  return out;
}

namespace {

struct CopyBinding {
  std::vector<std::uint32_t> selects;
  std::uint32_t data = 0;
};

// Basis-change gates taking the Rz form of a multiplexed rotation to the
// other axes: conj * Rz(t) * conj^dagger equals Ry(t) (resp. Rx(t)).
Eigen::Matrix2cd ry_conjugator() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd v;
  v << Complex(s, 0), Complex(0, -s), Complex(0, -s), Complex(s, 0);
  return v;
}

Eigen::Matrix2cd rx_conjugator() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd v;
  v << Complex(s, 0), Complex(s, 0), Complex(-s, 0), Complex(s, 0);
  return v;
}

// Shared replication of one multiplexed rotation across the given copies.
// Rz blocks diag(e^{-i a/2}, e^{i a/2}) are the lift of the table with
// angles -a/2; other axes conjugate each copy's data qubit (no CNOT cost).
MassProdTrace emit_mass_rotation(Circuit &c, const MultiplexedRotation &m,
                                 std::uint32_t k, std::uint32_t t,
                                 const std::vector<CopyBinding> &copies,
                                 const MassPool &pool) {
  m.validate();
  PhaseFunction f{m.s, std::vector<double>(m.angles.size())};
  for (std::size_t x = 0; x < m.angles.size(); ++x) {
    f.angles[x] = -m.angles[x] / 2;
  }
  Eigen::Matrix2cd conj;
  const bool need_conj = m.axis != RotationAxis::Z;
  if (m.axis == RotationAxis::Y) conj = ry_conjugator();
  if (m.axis == RotationAxis::X) conj = rx_conjugator();
  if (need_conj) {
    for (const CopyBinding &cb : copies) {
      c.u2(cb.data, conj.adjoint());
    }
  }
  std::vector<PairBinding> pairs;
  pairs.reserve(copies.size());
  for (const CopyBinding &cb : copies) {
    pairs.push_back(PairBinding{cb.selects, cb.data});
  }
  MassProdTrace trace = emit_mass_prod(c, f, k, t, pairs, pool);
  if (need_conj) {
    for (const CopyBinding &cb : copies) {
      c.u2(cb.data, conj);
    }
  }
  return trace;
}

// Replicates a single-data-qubit multiplexor: three shared rotation builds
// on the data qubits plus the select-diagonal as a lift on one grounded
// ancilla per copy.
std::vector<MassProdTrace> emit_mass_multiplexor1(
    Circuit &c, const Multiplexor1 &m, std::uint32_t k, std::uint32_t t,
    const std::vector<CopyBinding> &copies,
    const std::vector<std::uint32_t> &delta_anc, const MassPool &pool,
    std::vector<SynthesisReport> *sub_reports) {
  const DemuxResult dm = demultiplex_1data(m);
  std::vector<MassProdTrace> traces;
  const auto run = [&](const char *label, auto &&emit) {
    const std::size_t begin = c.gates().size();
    traces.push_back(emit());
    if (sub_reports) {
      SynthesisReport r;
      r.cnot_count = range_cnots(c, begin, c.gates().size());
      r.n = m.s;
      r.k = k;
      r.t = t;
      r.d = COST_MODEL_D;
      r.bound_value = cost_bound({m.s, k, t, COST_MODEL_D});
      r.notes = label;
      sub_reports->push_back(std::move(r));
    }
  };
  run("multiplexed rz (first)", [&] {
    return emit_mass_rotation(c, dm.rz2, k, t, copies, pool);
  });
  run("multiplexed ry", [&] {
    return emit_mass_rotation(c, dm.ry, k, t, copies, pool);
  });
  run("multiplexed rz (second)", [&] {
    return emit_mass_rotation(c, dm.rz1, k, t, copies, pool);
  });
  run("select diagonal as lifted rz", [&] {
    std::vector<PairBinding> pairs;
    for (std::size_t j = 0; j < copies.size(); ++j) {
      pairs.push_back(PairBinding{copies[j].selects, delta_anc[j]});
    }
    return emit_mass_prod(c, dm.delta, k, t, pairs, pool);
  });
  return traces;
}

Circuit synth_multiplexor1_single(const Multiplexor1 &m) {
  Circuit c;
  std::vector<std::uint32_t> selects;
  if (m.s > 0) {
    c.add_register("sel", m.s);
    selects = c.register_qubits("sel");
  }
  c.add_register("d", 1);
  const std::uint32_t data = c.qubit("d");
  if (m.s == 0) {
    c.u2(data, m.blocks[0]);
    return c;
  }
  const DemuxResult dm = demultiplex_1data(m);
  emit_multiplexed_rotation(c, dm.rz2, selects, data);
  emit_multiplexed_rotation(c, dm.ry, selects, data);
  emit_multiplexed_rotation(c, dm.rz1, selects, data);
  emit_diagonal(c, dm.delta, selects);
  return c;
}

}  // namespace

MassProdResult mass_produce_diagonal(const PhaseFunction &f, std::uint32_t r) {
  f.validate();
  if (r < 1) throw DomainError("copy count must be at least 1");
  MassProdResult res;
  res.requested_r = r;
  if (r == 1) {
    res.circuit = synth_diagonal_single(f);
    res.copies = 1;
    res.copy_registers = {"q"};
    res.report = make_report(res.circuit);
    res.report.n = f.n;
    res.report.naive_count = res.report.cnot_count;
    res.report.ratio = 1.0;
    return res;
  }
  const KtChoice kt = select_kt(f.n, r);
  if (!kt.feasible) {
    throw DomainError("table too small to replicate " + std::to_string(r) +
                      " copies");
  }
  res.copies = std::uint32_t{1} << kt.t;
  res.mass_produced = true;
  std::vector<PairBinding> pairs;
  for (std::uint32_t j = 0; j < res.copies; ++j) {
    const std::string xr = "x" + std::to_string(j);
    const std::string cr = "c" + std::to_string(j);
    res.circuit.add_register(xr, f.n);
    res.circuit.add_register(cr, 1, RegisterRole::Ancilla);
    pairs.push_back(PairBinding{res.circuit.register_qubits(xr),
                                res.circuit.qubit(cr)});
    res.pair_registers.emplace_back(xr, cr);
    res.copy_registers.push_back(xr);
  }
  const MassPool pool = declare_pool(
      res.circuit, MassPoolSpec::for_params(f.n, kt.k, kt.t), "w.");
  res.traces.push_back(
      emit_mass_prod(res.circuit, f, kt.k, kt.t, pairs, pool));
  res.report = make_report(res.circuit);
  res.report.n = f.n;
  res.report.k = kt.k;
  res.report.t = kt.t;
  res.report.d = COST_MODEL_D;
  res.report.bound_value = cost_bound({f.n, kt.k, kt.t, COST_MODEL_D});
  res.report.naive_count =
      static_cast<std::int64_t>(r) * ((std::int64_t{1} << f.n) - 2);
  res.report.ratio = *res.report.naive_count == 0
                         ? 0.0
                         : static_cast<double>(res.report.cnot_count) /
                               static_cast<double>(*res.report.naive_count);
  return res;
}

MassProdResult mass_produce_multiplexed_rotation(const MultiplexedRotation &m,
                                                 std::uint32_t r) {
  m.validate();
  if (r < 1) throw DomainError("copy count must be at least 1");
  MassProdResult res;
  res.requested_r = r;
  const std::int64_t single = m.s == 0 ? 0 : (std::int64_t{1} << m.s);
  if (r == 1) {
    res.circuit = synth_multiplexed_rotation(m);
    res.copies = 1;
    res.report = make_report(res.circuit);
    res.report.n = m.s;
    res.report.naive_count = single;
    res.report.ratio = 1.0;
    return res;
  }
  const KtChoice kt = select_kt(m.s, r);
  if (!kt.feasible) {
    throw DomainError("too few select qubits to replicate " +
                      std::to_string(r) + " copies");
  }
  res.copies = std::uint32_t{1} << kt.t;
  res.mass_produced = true;
  std::vector<CopyBinding> copies;
  for (std::uint32_t j = 0; j < res.copies; ++j) {
    const std::string sr = "sel" + std::to_string(j);
    const std::string dr = "d" + std::to_string(j);
    res.circuit.add_register(sr, m.s);
    res.circuit.add_register(dr, 1);
    copies.push_back(CopyBinding{res.circuit.register_qubits(sr),
                                 res.circuit.qubit(dr)});
    res.pair_registers.emplace_back(sr, dr);
    res.copy_registers.push_back(sr);
  }
  const MassPool pool = declare_pool(
      res.circuit, MassPoolSpec::for_params(m.s, kt.k, kt.t), "w.");
  res.traces.push_back(
      emit_mass_rotation(res.circuit, m, kt.k, kt.t, copies, pool));
  res.report = make_report(res.circuit);
  res.report.n = m.s;
  res.report.k = kt.k;
  res.report.t = kt.t;
  res.report.d = COST_MODEL_D;
  res.report.bound_value = cost_bound({m.s, kt.k, kt.t, COST_MODEL_D});
  res.report.naive_count = static_cast<std::int64_t>(r) * single;
  res.report.ratio = static_cast<double>(res.report.cnot_count) /
                     static_cast<double>(*res.report.naive_count);
  return res;
}

MassProdResult mass_produce_multiplexor1(const Multiplexor1 &m,
                                         std::uint32_t r) {
  m.validate();
  if (r < 1) throw DomainError("copy count must be at least 1");
  MassProdResult res;
  res.requested_r = r;
  if (r == 1) {
    res.circuit = synth_multiplexor1_single(m);
    res.copies = 1;
    res.report = make_report(res.circuit);
    res.report.n = m.s;
    res.report.naive_count = res.report.cnot_count;
    res.report.ratio = 1.0;
    return res;
  }
  const KtChoice kt = select_kt(m.s, r);
  if (!kt.feasible) {
    throw DomainError("too few select qubits to replicate " +
                      std::to_string(r) + " copies");
  }
  res.copies = std::uint32_t{1} << kt.t;
  res.mass_produced = true;
  std::vector<CopyBinding> copies;
  std::vector<std::uint32_t> delta_anc;
  for (std::uint32_t j = 0; j < res.copies; ++j) {
    const std::string sr = "sel" + std::to_string(j);
    const std::string dr = "d" + std::to_string(j);
    res.circuit.add_register(sr, m.s);
    res.circuit.add_register(dr, 1);
    delta_anc.push_back(res.circuit.add_register("danc" + std::to_string(j),
                                                 1, RegisterRole::Ancilla));
    copies.push_back(CopyBinding{res.circuit.register_qubits(sr),
                                 res.circuit.qubit(dr)});
    res.pair_registers.emplace_back(sr, dr);
    res.copy_registers.push_back(sr);
  }
  const MassPool pool = declare_pool(
      res.circuit, MassPoolSpec::for_params(m.s, kt.k, kt.t), "w.");
  res.traces = emit_mass_multiplexor1(res.circuit, m, kt.k, kt.t, copies,
                                      delta_anc, pool, &res.report.sub_reports);
  res.report.cnot_count = cnot_count(res.circuit);
  res.report.gate_count = expanded_gate_count(res.circuit);
  res.report.ancilla_count = res.circuit.ancilla_count();
  res.report.n = m.s;
  res.report.k = kt.k;
  res.report.t = kt.t;
  res.report.d = COST_MODEL_D;
  res.report.bound_value = 4 * cost_bound({m.s, kt.k, kt.t, COST_MODEL_D});
  res.report.naive_count =
      static_cast<std::int64_t>(r) *
      cnot_count(synth_multiplexor1_single(m));
  res.report.ratio = static_cast<double>(res.report.cnot_count) /
                     static_cast<double>(*res.report.naive_count);
  return res;
}

MassProdResult mass_produce_state(const Eigen::VectorXcd &psi,
                                  std::uint32_t r) {
  const StatePrepSchedule sched = state_prep_angles(psi);
  const auto n = static_cast<std::uint32_t>(sched.ry_angles.size());
  if (r < 1) throw DomainError("copy count must be at least 1");
  MassProdResult res;
  res.requested_r = r;
  if (r == 1) {
    res.circuit = synth_state_prep_single(psi);
    res.copies = 1;
    res.copy_registers = {"q"};
    res.report = make_report(res.circuit);
    res.report.n = n;
    res.report.naive_count = res.report.cnot_count;
    res.report.ratio = 1.0;
    return res;
  }
  const std::uint32_t t = std::max<std::uint32_t>(1, ceil_log2(r));
  const std::uint32_t threshold_level = (n + 1) / 2;
  // Every replicated level must admit parameters; the low levels never need
  // them.
  std::vector<KtChoice> level_kt(n);
  for (std::uint32_t l = threshold_level; l < n; ++l) {
    level_kt[l] = select_kt(l, r);
    if (!level_kt[l].feasible) {
      throw DomainError("level " + std::to_string(l) +
                        " has too few selects to replicate " +
                        std::to_string(r) + " copies");
    }
  }
  res.copies = std::uint32_t{1} << t;
  res.mass_produced = true;
  std::vector<std::vector<std::uint32_t>> copy_qubits;
  for (std::uint32_t j = 0; j < res.copies; ++j) {
    const std::string xr = "x" + std::to_string(j);
    res.circuit.add_register(xr, n);
    copy_qubits.push_back(res.circuit.register_qubits(xr));
    res.copy_registers.push_back(xr);
  }
  MassPoolSpec spec;
  bool any_mass = false;
  for (std::uint32_t l = threshold_level; l < n; ++l) {
    const MassPoolSpec s = MassPoolSpec::for_params(l, level_kt[l].k, t);
    if (!any_mass) {
      spec = s;
      any_mass = true;
    } else {
      spec.merge(s);
    }
  }
  MassPool pool;
  if (any_mass) pool = declare_pool(res.circuit, spec, "w.");

  res.circuit.add_global_phase(res.copies * sched.global_phase);
  std::int64_t naive_levels_cnots = 0;
  for (std::uint32_t l = 0; l < n; ++l) {
    const MultiplexedRotation ry{RotationAxis::Y, l, sched.ry_angles[l]};
    const MultiplexedRotation rz{RotationAxis::Z, l, sched.rz_angles[l]};
    if (l < threshold_level) {
      const std::size_t begin = res.circuit.gates().size();
      for (std::uint32_t j = 0; j < res.copies; ++j) {
        const std::vector<std::uint32_t> selects(copy_qubits[j].begin(),
                                                 copy_qubits[j].begin() + l);
        emit_multiplexed_rotation(res.circuit, ry, selects,
                                  copy_qubits[j][l]);
        emit_multiplexed_rotation(res.circuit, rz, selects,
                                  copy_qubits[j][l]);
      }
      naive_levels_cnots +=
          range_cnots(res.circuit, begin, res.circuit.gates().size());
    } else {
      std::vector<CopyBinding> bindings;
      for (std::uint32_t j = 0; j < res.copies; ++j) {
        bindings.push_back(CopyBinding{
            std::vector<std::uint32_t>(copy_qubits[j].begin(),
                                       copy_qubits[j].begin() + l),
            copy_qubits[j][l]});
      }
      for (const MultiplexedRotation &rot : {ry, rz}) {
        const std::size_t begin = res.circuit.gates().size();
        res.traces.push_back(emit_mass_rotation(res.circuit, rot, level_kt[l].k,
                                                t, bindings, pool));
        SynthesisReport sub;
        sub.cnot_count =
            range_cnots(res.circuit, begin, res.circuit.gates().size());
        sub.n = l;
        sub.k = level_kt[l].k;
        sub.t = t;
        sub.d = COST_MODEL_D;
        sub.bound_value = cost_bound({l, level_kt[l].k, t, COST_MODEL_D});
        sub.notes = std::string("level ") + std::to_string(l) +
                    (rot.axis == RotationAxis::Y ? " ry" : " rz");
        res.report.sub_reports.push_back(std::move(sub));
      }
    }
  }
  res.report.cnot_count = cnot_count(res.circuit);
  res.report.gate_count = expanded_gate_count(res.circuit);
  res.report.ancilla_count = res.circuit.ancilla_count();
  res.report.n = n;
  res.report.t = t;
  res.report.d = COST_MODEL_D;
  double mass_bounds = 0;
  for (const SynthesisReport &sub : res.report.sub_reports) {
    mass_bounds += *sub.bound_value;
  }
  res.report.bound_value =
      static_cast<double>(r) * std::pow(2.0, threshold_level) + mass_bounds;
  res.report.naive_count =
      static_cast<std::int64_t>(r) * cnot_count(synth_state_prep_single(psi));
  res.report.ratio = static_cast<double>(res.report.cnot_count) /
                     static_cast<double>(*res.report.naive_count);
  res.report.notes = "levels below " + std::to_string(threshold_level) +
                     " replicated per copy (" +
                     std::to_string(naive_levels_cnots) +
                     " CNOTs), higher levels shared";
  return res;
}

MassProdResult mass_produce_unitary(const Eigen::MatrixXcd &u,
                                    std::uint32_t r) {
  const std::vector<QsdFactor> factors = qsd_factorize(u);
  const auto n =
      static_cast<std::uint32_t>(std::bit_width(std::size_t(u.rows())) - 1);
  if (r < 1) throw DomainError("copy count must be at least 1");
  MassProdResult res;
  res.requested_r = r;
  if (r == 1) {
    res.circuit = qsd_synthesize(u);
    res.copies = 1;
    res.copy_registers = {"q"};
    res.report = make_report(res.circuit);
    res.report.n = n;
    res.report.naive_count = res.report.cnot_count;
    res.report.ratio = 1.0;
    return res;
  }
  const std::uint32_t t = std::max<std::uint32_t>(1, ceil_log2(r));
  const KtChoice kt = n >= 2 ? select_kt(n - 1, r) : KtChoice{};
  res.copies = std::uint32_t{1} << t;
  std::vector<std::vector<std::uint32_t>> copy_qubits;
  for (std::uint32_t j = 0; j < res.copies; ++j) {
    const std::string qr = "q" + std::to_string(j);
    res.circuit.add_register(qr, n);
    copy_qubits.push_back(res.circuit.register_qubits(qr));
    res.copy_registers.push_back(qr);
  }

  std::size_t leaf_count = 0, rot_count = 0;
  for (const QsdFactor &f : factors) {
    leaf_count += f.kind == QsdFactor::Kind::Leaf;
    rot_count += f.kind == QsdFactor::Kind::RotY;
  }

  if (!kt.feasible) {
    // Too few selects for sharing: repeat each factor on every copy.
    res.mass_produced = false;
    for (const QsdFactor &f : factors) {
      const std::size_t begin = res.circuit.gates().size();
      for (std::uint32_t j = 0; j < res.copies; ++j) {
        emit_qsd_factor(res.circuit, f, copy_qubits[j]);
      }
      SynthesisReport sub;
      sub.cnot_count =
          range_cnots(res.circuit, begin, res.circuit.gates().size());
      const std::int64_t per_copy =
          f.kind == QsdFactor::Kind::RotY
              ? (n >= 2 ? (std::int64_t{1} << (n - 1)) : 0)
              : (n >= 2 ? 4 * (std::int64_t{1} << (n - 1)) - 2 : 0);
      sub.bound_value = static_cast<double>(res.copies) *
                        static_cast<double>(per_copy);
      sub.notes = f.kind == QsdFactor::Kind::RotY
                      ? "multiplexed ry, replicated per copy"
                      : "leaf multiplexor, replicated per copy";
      res.report.sub_reports.push_back(std::move(sub));
    }
    res.report.notes = "factor selects too small for sharing; factors "
                       "replicated per copy";
  } else {
    res.mass_produced = true;
    std::vector<std::uint32_t> delta_anc;
    for (std::uint32_t j = 0; j < res.copies; ++j) {
      delta_anc.push_back(res.circuit.add_register(
          "danc" + std::to_string(j), 1, RegisterRole::Ancilla));
    }
    const MassPool pool = declare_pool(
        res.circuit, MassPoolSpec::for_params(n - 1, kt.k, t), "w.");
    res.report.k = kt.k;
    for (const QsdFactor &f : factors) {
      std::vector<CopyBinding> bindings;
      for (std::uint32_t j = 0; j < res.copies; ++j) {
        CopyBinding cb;
        for (std::uint32_t q = 0; q < n; ++q) {
          if (q == f.data_qubit) {
            cb.data = copy_qubits[j][q];
          } else {
            cb.selects.push_back(copy_qubits[j][q]);
          }
        }
        bindings.push_back(std::move(cb));
      }
      const std::size_t begin = res.circuit.gates().size();
      if (f.kind == QsdFactor::Kind::RotY) {
        res.traces.push_back(emit_mass_rotation(res.circuit, f.as_rotation(),
                                                kt.k, t, bindings, pool));
        SynthesisReport sub;
        sub.cnot_count =
            range_cnots(res.circuit, begin, res.circuit.gates().size());
        sub.bound_value = cost_bound({n - 1, kt.k, t, COST_MODEL_D});
        sub.notes = "multiplexed ry, shared";
        res.report.sub_reports.push_back(std::move(sub));
      } else {
        std::vector<SynthesisReport> inner;
        auto traces = emit_mass_multiplexor1(res.circuit, f.leaf, kt.k, t,
                                             bindings, delta_anc, pool,
                                             &inner);
        for (auto &tr : traces) res.traces.push_back(std::move(tr));
        SynthesisReport sub;
        sub.cnot_count =
            range_cnots(res.circuit, begin, res.circuit.gates().size());
        sub.bound_value = 4 * cost_bound({n - 1, kt.k, t, COST_MODEL_D});
        sub.notes = "leaf multiplexor, shared";
        res.report.sub_reports.push_back(std::move(sub));
      }
    }
  }
  res.report.cnot_count = cnot_count(res.circuit);
  res.report.gate_count = expanded_gate_count(res.circuit);
  res.report.ancilla_count = res.circuit.ancilla_count();
  res.report.n = n;
  res.report.t = t;
  res.report.d = COST_MODEL_D;
  double factor_bounds = 0;
  for (const SynthesisReport &sub : res.report.sub_reports) {
    factor_bounds += *sub.bound_value;
  }
  res.report.bound_value = factor_bounds;
  res.report.naive_count =
      static_cast<std::int64_t>(r) * cnot_count(qsd_synthesize(u));
  res.report.ratio = *res.report.naive_count == 0
                         ? 0.0
                         : static_cast<double>(res.report.cnot_count) /
                               static_cast<double>(*res.report.naive_count);
  res.report.notes += res.report.notes.empty() ? "" : "; ";
  res.report.notes += std::to_string(leaf_count) + " leaf multiplexors, " +
                      std::to_string(rot_count) + " multiplexed ry factors";
  return res;
}

VerifyReport verify_phase_oracle(
    const Circuit &circuit, const PhaseFunction &f,
    const std::vector<std::pair<std::string, std::string>> &pair_registers,
    std::int64_t samples, std::uint64_t seed, double tol) {
  f.validate();
  VerifyReport report;
  report.mode = "phase-path";

  std::vector<std::uint32_t> logical;
  {
    std::uint32_t off = 0;
    for (const Register &r : circuit.registers()) {
      if (r.role == RegisterRole::Logical) {
        for (std::uint32_t i = 0; i < r.width; ++i) logical.push_back(off + i);
      }
      off += r.width;
    }
  }
  const std::uint32_t nl = static_cast<std::uint32_t>(logical.size());

  std::vector<std::vector<std::uint32_t>> xs, cs;
  for (const auto &[xr, cr] : pair_registers) {
    xs.push_back(circuit.register_qubits(xr));
    cs.push_back(circuit.register_qubits(cr));
  }

  const bool exhaustive =
      samples <= 0 || (nl < 63 && samples >= (std::int64_t{1} << nl));
  CounterRng rng(seed, "phase-oracle");
  const std::int64_t total =
      exhaustive ? (std::int64_t{1} << nl) : samples;

  Complex lambda(1, 0);
  bool lambda_set = false;
  for (std::int64_t it = 0; it < total; ++it) {
    std::uint64_t v;
    if (exhaustive) {
      v = static_cast<std::uint64_t>(it);
    } else {
      v = nl >= 64 ? rng.next_u64()
                   : rng.next_u64() & ((std::uint64_t{1} << nl) - 1);
    }
    BasisState in(circuit.num_qubits());
    for (std::uint32_t i = 0; i < nl; ++i) {
      in.set_bit(logical[i], (v >> (nl - 1 - i)) & 1);
    }
    const BasisPath out = simulate_phase_path(circuit, in);
    ++report.checked;
    if (!(out.state == in)) {
      report.failures.push_back({in.to_string(), Complex(1, 0), Complex(1, 0),
                                 "basis state not preserved: " +
                                     out.state.to_string()});
      if (report.failures.size() >= 10) break;
      continue;
    }
    double expected_angle = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const std::uint64_t x = in.value_of(xs[j]);
      const bool cbit = in.value_of(cs[j]) != 0;
      expected_angle += cbit ? -f.angles[x] : f.angles[x];
    }
    const Complex expected = std::exp(Complex(0, expected_angle));
    if (!lambda_set) {
      lambda = out.phase / expected;
      lambda /= std::abs(lambda);
      lambda_set = true;
    }
    const double err = std::abs(out.phase - lambda * expected);
    report.max_phase_error = std::max(report.max_phase_error, err);
    if (err > tol) {
      report.failures.push_back(
          {in.to_string(), lambda * expected, out.phase, "phase mismatch"});
      if (report.failures.size() >= 10) break;
    }
  }
  return report;
}

}  // namespace qmp
