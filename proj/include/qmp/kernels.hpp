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

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qmp::kernels {

using Complex = std::complex<double>;

/**
 * @brief Statevector inner-loop kernels.
 *
 * `stride` is the index distance between the |0> and |1> halves of the
 * target qubit: amplitude pairs are (base + i, base + i + stride). All
 * kernels sweep the full 2^m array with size `size`.
 *
 * apply_1q     : amplitudes (a, b) -> (u00 a + u01 b, u10 a + u11 b)
 * apply_diag1  : a *= p0 on target-0 half, a *= p1 on target-1 half
 * apply_cnot   : swaps target pairs on the control-1 subset
 * scale        : multiplies the whole array by a scalar
 */
struct KernelTable {
  void (*apply_1q)(Complex *amp, std::size_t size, std::size_t stride,
                   const Complex u[4]);
  void (*apply_diag1)(Complex *amp, std::size_t size, std::size_t stride,
                      Complex p0, Complex p1);
  void (*apply_cnot)(Complex *amp, std::size_t size, std::size_t ctrl_stride,
                     std::size_t tgt_stride);
  void (*scale)(Complex *amp, std::size_t size, Complex factor);
  const char *name;
};

const KernelTable &scalar_kernels();

#if defined(QMP_HAVE_AVX2_BUILD)
const KernelTable &avx2_kernels();
#endif

/** Kernel set chosen at runtime: AVX2+FMA when the CPU supports it, unless
 *  the QMP_KERNELS environment variable ("scalar" or "avx2") overrides. */
const KernelTable &active_kernels();

/** Names of every kernel set usable on this machine. */
std::vector<const KernelTable *> available_kernel_tables();

}  // namespace qmp::kernels
