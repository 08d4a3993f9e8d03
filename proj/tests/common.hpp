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

#include <Eigen/Dense>

#include "qmp/circuit.hpp"
#include "qmp/dense.hpp"
#include "qmp/random.hpp"

namespace qmp::test {

inline double max_abs_diff(const Eigen::MatrixXcd &a,
                           const Eigen::MatrixXcd &b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/** Kronecker product, for assembling reference operators. */
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a,
                             const Eigen::MatrixXcd &b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::Matrix2cd random_su2(CounterRng &rng) {
  return haar_unitary(2, rng);
}

}  // namespace qmp::test
