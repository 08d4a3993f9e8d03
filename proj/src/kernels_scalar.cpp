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

#include <cstdlib>
#include <utility>
#include <vector>

#include "qmp/kernels.hpp"

namespace qmp::kernels {

namespace {

void scalar_apply_1q(Complex *amp, std::size_t size, std::size_t stride,
                     const Complex u[4]) {
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a = amp[i];
      const Complex b = amp[i + stride];
      amp[i] = u[0] * a + u[1] * b;
      amp[i + stride] = u[2] * a + u[3] * b;
    }
  }
}

void scalar_apply_diag1(Complex *amp, std::size_t size, std::size_t stride,
                        Complex p0, Complex p1) {
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      amp[i] *= p0;
      amp[i + stride] *= p1;
    }
  }
}

void scalar_apply_cnot(Complex *amp, std::size_t size,
                       std::size_t ctrl_stride, std::size_t tgt_stride) {
  // Iterate over indices with control bit 1 and target bit 0 and swap with
  // the target-1 partner.
  for (std::size_t i = 0; i < size; ++i) {
    if ((i & ctrl_stride) && !(i & tgt_stride)) {
      std::swap(amp[i], amp[i | tgt_stride]);
    }
  }
}

void scalar_scale(Complex *amp, std::size_t size, Complex factor) {
  for (std::size_t i = 0; i < size; ++i) amp[i] *= factor;
}

}  // namespace

const KernelTable &scalar_kernels() {
  static const KernelTable table = {scalar_apply_1q, scalar_apply_diag1,
                                    scalar_apply_cnot, scalar_scale, "scalar"};
  return table;
}

const KernelTable &active_kernels() {
  static const KernelTable *chosen = [] {
    const char *env = std::getenv("QMP_KERNELS");
    const std::string want = env ? env : "";
#if defined(QMP_HAVE_AVX2_BUILD)
    if (want == "avx2") return &avx2_kernels();
    if (want.empty() && __builtin_cpu_supports("avx2") &&
        __builtin_cpu_supports("fma")) {
      return &avx2_kernels();
    }
#endif
    return &scalar_kernels();
  }();
  return *chosen;
}

std::vector<const KernelTable *> available_kernel_tables() {
  std::vector<const KernelTable *> out{&scalar_kernels()};
#if defined(QMP_HAVE_AVX2_BUILD)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    out.push_back(&avx2_kernels());
  }
#endif
  return out;
}

}  // namespace qmp::kernels
