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
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qmp {

/**
 * @brief Counter-based random generator.
 *
 * Every draw is a pure function of (seed, stream name, counter), so named
 * sub-streams can be carved off a single campaign seed and remain
 * reproducible regardless of evaluation order.
 */
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next_u64();
  double next_double();    // uniform in [0, 1)
  double next_angle();     // uniform in [0, 2*pi)
  double next_gaussian();  // standard normal

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/** 2^n phase angles, uniform in [0, 2*pi). */
std::vector<double> random_phase_angles(std::uint32_t n, CounterRng &rng);

/** Unit-norm random state of the given dimension (Gaussian components). */
Eigen::VectorXcd random_state_vector(std::size_t dim, CounterRng &rng);

/** Haar-random unitary: QR of a complex Gaussian matrix with the R diagonal
 *  phases folded into Q. */
Eigen::MatrixXcd haar_unitary(std::size_t dim, CounterRng &rng);

}  // namespace qmp
