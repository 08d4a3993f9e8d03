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

#include "qmp/random.hpp"

#include <cmath>
#include <numbers>

namespace qmp {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::string_view stream)
    : key_(mix64(seed ^ fnv1a(stream))) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + counter_++); }

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_angle() {
  return next_double() * 2 * std::numbers::pi;
}

double CounterRng::next_gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = next_double();
  const double u2 = next_double();
  if (u1 <= 0) u1 = 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2 * std::numbers::pi * u2;
  cached_ = r * std::sin(t);
  has_cached_ = true;
  return r * std::cos(t);
}

std::vector<double> random_phase_angles(std::uint32_t n, CounterRng &rng) {
  std::vector<double> out(std::size_t{1} << n);
  for (double &a : out) a = rng.next_angle();
  return out;
}

Eigen::VectorXcd random_state_vector(std::size_t dim, CounterRng &rng) {
  Eigen::VectorXcd v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v(i) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  }
  const double n = v.norm();
  if (n == 0) {
    v.setZero();
    v(0) = 1;
    return v;
  }
  return v / n;
}

Eigen::MatrixXcd haar_unitary(std::size_t dim, CounterRng &rng) {
  Eigen::MatrixXcd a(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      a(r, c) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    q.col(j) *= std::abs(d) == 0.0 ? 1.0 : d / std::abs(d);
  }
  return q;
}

}  // namespace qmp
