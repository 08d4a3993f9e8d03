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

#include <immintrin.h>

#include <algorithm>
#include <utility>

#include "qmp/kernels.hpp"

namespace qmp::kernels {

namespace {

// One __m256d holds two complex doubles as [re0, im0, re1, im1].

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_unpacklo_pd(b, b);
  const __m256d b_im = _mm256_unpackhi_pd(b, b);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline __m256d broadcast(Complex c) {
  return _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
}

inline __m256d pack2(Complex lo, Complex hi) {
  return _mm256_setr_pd(lo.real(), lo.imag(), hi.real(), hi.imag());
}

void avx2_apply_1q(Complex *amp, std::size_t size, std::size_t stride,
                   const Complex u[4]) {
  double *d = reinterpret_cast<double *>(amp);
  if (stride == 1) {
    // Pairs are adjacent: one vector per pair.
    const __m256d diag = pack2(u[0], u[3]);
    const __m256d off = pack2(u[1], u[2]);
    for (std::size_t i = 0; i < size; i += 2) {
      const __m256d v = _mm256_loadu_pd(d + 2 * i);
      const __m256d vx = _mm256_permute2f128_pd(v, v, 0x01);
      _mm256_storeu_pd(d + 2 * i,
                       _mm256_add_pd(cmul(v, diag), cmul(vx, off)));
    }
    return;
  }
  const __m256d u00 = broadcast(u[0]), u01 = broadcast(u[1]);
  const __m256d u10 = broadcast(u[2]), u11 = broadcast(u[3]);
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; i += 2) {
      const __m256d va = _mm256_loadu_pd(d + 2 * i);
      const __m256d vb = _mm256_loadu_pd(d + 2 * (i + stride));
      _mm256_storeu_pd(d + 2 * i,
                       _mm256_add_pd(cmul(va, u00), cmul(vb, u01)));
      _mm256_storeu_pd(d + 2 * (i + stride),
                       _mm256_add_pd(cmul(va, u10), cmul(vb, u11)));
    }
  }
}

void avx2_apply_diag1(Complex *amp, std::size_t size, std::size_t stride,
                      Complex p0, Complex p1) {
  double *d = reinterpret_cast<double *>(amp);
  if (stride == 1) {
    const __m256d p = pack2(p0, p1);
    for (std::size_t i = 0; i < size; i += 2) {
      _mm256_storeu_pd(d + 2 * i, cmul(_mm256_loadu_pd(d + 2 * i), p));
    }
    return;
  }
  const __m256d v0 = broadcast(p0), v1 = broadcast(p1);
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; i += 2) {
      _mm256_storeu_pd(d + 2 * i, cmul(_mm256_loadu_pd(d + 2 * i), v0));
      _mm256_storeu_pd(d + 2 * (i + stride),
                       cmul(_mm256_loadu_pd(d + 2 * (i + stride)), v1));
    }
  }
}

void avx2_apply_cnot(Complex *amp, std::size_t size, std::size_t ctrl_stride,
                     std::size_t tgt_stride) {
  double *d = reinterpret_cast<double *>(amp);
  if (std::min(ctrl_stride, tgt_stride) < 2) {
    for (std::size_t i = 0; i < size; ++i) {
      if ((i & ctrl_stride) && !(i & tgt_stride)) {
        std::swap(amp[i], amp[i | tgt_stride]);
      }
    }
    return;
  }
  for (std::size_t i = 0; i < size; i += 2) {
    if ((i & ctrl_stride) && !(i & tgt_stride)) {
      const std::size_t j = i | tgt_stride;
      const __m256d a = _mm256_loadu_pd(d + 2 * i);
      const __m256d b = _mm256_loadu_pd(d + 2 * j);
      _mm256_storeu_pd(d + 2 * i, b);
      _mm256_storeu_pd(d + 2 * j, a);
    }
  }
}

void avx2_scale(Complex *amp, std::size_t size, Complex factor) {
  if (size < 2) {
    for (std::size_t i = 0; i < size; ++i) amp[i] *= factor;
    return;
  }
  double *d = reinterpret_cast<double *>(amp);
  const __m256d f = broadcast(factor);
  for (std::size_t i = 0; i < size; i += 2) {
    _mm256_storeu_pd(d + 2 * i, cmul(_mm256_loadu_pd(d + 2 * i), f));
  }
}

}  // namespace

const KernelTable &avx2_kernels() {
  static const KernelTable table = {avx2_apply_1q, avx2_apply_diag1,
                                    avx2_apply_cnot, avx2_scale, "avx2"};
  return table;
}

}  // namespace qmp::kernels
