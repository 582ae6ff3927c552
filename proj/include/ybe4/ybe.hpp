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

#include <cassert>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ybe4/errors.hpp"
#include "ybe4/linalg.hpp"

namespace ybe4 {

/// Permutation sending basis index (i,j) of V⊗V to (j,i), dim V = d.
inline Matrix swap_matrix(std::size_t d) {
  assert(d >= 1);
  Matrix t(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t(j * d + i, i * d + j) = 1.0;
  return t;
}

enum class YbeForm { braided, algebraic };
enum class ResidualMethod { embedding, contraction };

inline const char* to_string(YbeForm f) { return f == YbeForm::braided ? "braided" : "algebraic"; }
inline const char* to_string(ResidualMethod m) {
  return m == ResidualMethod::embedding ? "embedding" : "contraction";
}

/// Frobenius residuals of both Yang–Baxter forms for one evaluation path.
struct YbeResidual {
  double braided = 0.0;
  double algebraic = 0.0;
  ResidualMethod method = ResidualMethod::embedding;
};

namespace detail {

inline void require_dim4(const Matrix& r, const char* what) {
  if (r.dim() != 4) throw DimensionError(std::string(what) + ": expected a 4x4 matrix");
}

}  // namespace detail

/// ‖(R⊗I)(I⊗R)(R⊗I) − (I⊗R)(R⊗I)(I⊗R)‖_F on V⊗V⊗V.
inline double braided_residual(const Matrix& r) {
  detail::require_dim4(r, "braided_residual");
  const Matrix id2 = Matrix::identity(2);
  const Matrix left = kron(r, id2);
  const Matrix right = kron(id2, r);
  return frobenius_norm(left * right * left - right * left * right);
}

/// ‖R12 R13 R23 − R23 R13 R12‖_F with R13 = (I⊗τ)(R⊗I)(I⊗τ).
inline double algebraic_residual(const Matrix& r) {
  detail::require_dim4(r, "algebraic_residual");
  const Matrix id2 = Matrix::identity(2);
  const Matrix tau = kron(id2, swap_matrix(2));
  const Matrix r12 = kron(r, id2);
  const Matrix r23 = kron(id2, r);
  const Matrix r13 = tau * r12 * tau;
  return frobenius_norm(r12 * r13 * r23 - r23 * r13 * r12);
}

/// Same residuals as the embedding route, evaluated by summing the component
/// identities over every (i,j,k) -> (x,y,z) without forming 8x8 operators.
///
/// Components use R^{ab}_{ij} = r(2a+b, 2i+j).
inline double contraction_residual(const Matrix& r, YbeForm form) {
  detail::require_dim4(r, "contraction_residual");
  auto R = [&r](int a, int b, int i, int j) { return r(2 * a + b, 2 * i + j); };
  double sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
              Complex lhs{}, rhs{};
              for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                  for (int c = 0; c < 2; ++c) {
                    if (form == YbeForm::braided) {
                      // (R⊗I)(I⊗R)(R⊗I) and (I⊗R)(R⊗I)(I⊗R)
                      lhs += R(a, b, i, j) * R(c, z, b, k) * R(x, y, a, c);
                      rhs += R(a, b, j, k) * R(x, c, i, a) * R(y, z, c, b);
                    } else {
                      // R12 R13 R23 and R23 R13 R12
                      lhs += R(b, c, j, k) * R(a, z, i, c) * R(x, y, a, b);
                      rhs += R(a, b, i, j) * R(x, c, a, k) * R(y, z, b, c);
                    }
                  }
              sum += std::norm(lhs - rhs);
            }
  return std::sqrt(sum);
}

inline YbeResidual ybe_residuals(const Matrix& r, ResidualMethod method = ResidualMethod::embedding) {
  if (method == ResidualMethod::embedding) return {braided_residual(r), algebraic_residual(r), method};
  return {contraction_residual(r, YbeForm::braided), contraction_residual(r, YbeForm::algebraic), method};
}

/// R·T. Braided solutions map to algebraic ones and back.
inline Matrix compose_with_swap(const Matrix& r) {
  detail::require_dim4(r, "compose_with_swap");
  return r * swap_matrix(2);
}

struct BraidLetter {
  int generator = 1;  // σ_i, 1 <= i <= strands-1
  int exponent = 1;   // ±1
};

struct BraidWord {
  int strands = 2;
  std::vector<BraidLetter> letters;

  bool valid() const {
    if (strands < 2) return false;
    for (const auto& l : letters)
      if (l.generator < 1 || l.generator > strands - 1 || (l.exponent != 1 && l.exponent != -1)) return false;
    return true;
  }
};

inline constexpr int kMaxBraidStrands = 6;

/// σ_i ↦ I^{⊗(i-1)} ⊗ R ⊗ I^{⊗(n-i-1)}; letters multiply left to right in
/// word order, σ_i^{-1} uses R^{-1}.
inline Matrix braid_rep(const BraidWord& word, const Matrix& r, const Tolerance& tol = {}) {
  detail::require_dim4(r, "braid_rep");
  if (word.strands > kMaxBraidStrands)
    throw SizeExceeded("braid_rep: at most " + std::to_string(kMaxBraidStrands) + " strands");
  if (!word.valid()) throw PreconditionFailed("braid_rep: generator index or exponent out of range");

  const std::size_t n = static_cast<std::size_t>(word.strands);
  const std::size_t full = std::size_t{1} << n;
  Matrix r_inv;
  bool have_inv = false;
  auto embed = [&](const Matrix& g, int i) {
    const std::size_t before = std::size_t{1} << static_cast<std::size_t>(i - 1);
    const std::size_t after = std::size_t{1} << (n - static_cast<std::size_t>(i) - 1);
    return kron(kron(Matrix::identity(before), g), Matrix::identity(after));
  };

  Matrix out = Matrix::identity(full);
  for (const auto& letter : word.letters) {
    if (letter.exponent < 0 && !have_inv) {
      r_inv = inverse(r, tol);
      have_inv = true;
    }
    out = out * embed(letter.exponent > 0 ? r : r_inv, letter.generator);
  }
  return out;
}

}  // namespace ybe4
