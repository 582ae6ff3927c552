// Copyright 2026 The ybe4 Authors
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

#include <cstdint>
#include <numbers>
#include <random>

#include "ybe4/linalg.hpp"

namespace ybe4 {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream) so parallel or reordered work stays
/// reproducible.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double random_angle(Rng& rng) { return uniform(rng, 0.0, 2.0 * std::numbers::pi); }

/// e^{iθ}, θ uniform on [0, 2π).
inline Complex random_phase(Rng& rng) { return std::polar(1.0, random_angle(rng)); }

/// Standard complex Gaussian (independent N(0,1) parts).
inline Complex random_gaussian(Rng& rng) {
  std::normal_distribution<double> n;
  const double re = n(rng);
  return {re, n(rng)};
}

inline Matrix random_matrix(Rng& rng, std::size_t dim) {
  Matrix m(dim);
  for (auto& v : m.data()) v = random_gaussian(rng);
  return m;
}

/// Haar-ish unitary from Gram–Schmidt on a Gaussian matrix.
inline Matrix random_unitary(Rng& rng, std::size_t dim) {
  Matrix g = random_matrix(rng, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Complex dot{};
      for (std::size_t i = 0; i < dim; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < dim; ++i) g(i, j) -= dot * g(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) norm += std::norm(g(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) g(i, j) /= norm;
  }
  return g;
}

}  // namespace ybe4
