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

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>

#include "ybe4/errors.hpp"
#include "ybe4/linalg.hpp"
#include "ybe4/ybe.hpp"

namespace ybe4 {

/// α|00> + β|01> + γ|10> + δ|11>.
struct TwoQubitState {
  Complex alpha{};
  Complex beta{};
  Complex gamma{};
  Complex delta{};

  static TwoQubitState from_vector(std::span<const Complex> v) { return {v[0], v[1], v[2], v[3]}; }

  /// u⊗v for single-qubit amplitudes.
  static TwoQubitState product(std::array<Complex, 2> u, std::array<Complex, 2> v) {
    return {u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]};
  }

  std::array<Complex, 4> amplitudes() const { return {alpha, beta, gamma, delta}; }

  double norm() const { return std::sqrt(std::norm(alpha) + std::norm(beta) + std::norm(gamma) + std::norm(delta)); }
};

struct ProductTest {
  bool product = false;
  Complex determinant{};  // αδ − βγ
};

/// A normalized state is a product state iff αδ − βγ = 0.
inline ProductTest is_product_state(const TwoQubitState& s, const Tolerance& tol = {}) {
  const Complex det = s.alpha * s.delta - s.beta * s.gamma;
  return {std::abs(det) <= tol.eq_tol, det};
}

inline TwoQubitState apply_gate(const Matrix& g, const TwoQubitState& s) {
  const auto in = s.amplitudes();
  const auto out = ybe4::apply(g, std::span<const Complex>(in));
  return TwoQubitState::from_vector(out);
}

/// Operator-Schmidt realignment: G[(i,k),(j,l)] ↦ G̃[(i,j),(k,l)]. G = A⊗B
/// exactly when G̃ = vec(A)·vec(B)ᵗ has rank 1.
inline Matrix realign(const Matrix& g) {
  detail::require_dim4(g, "realign");
  Matrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = g(2 * i + k, 2 * j + l);
  return out;
}

inline constexpr double kLocalGapRatio = 1e-6;

/// σ₂/σ₁ of the realignment; zero for a tensor product of 2×2 operators.
inline double schmidt_ratio(const Matrix& g) {
  const auto sv = singular_values(realign(g));
  return sv[0] > 0.0 ? sv[1] / sv[0] : 0.0;
}

struct EntanglingVerdict {
  bool entangling = false;
  double local_ratio = 0.0;  // schmidt_ratio(G)
  double swap_ratio = 0.0;   // schmidt_ratio(G·T)
  std::optional<TwoQubitState> witness;
  std::optional<TwoQubitState> output;
  double witness_determinant = 0.0;  // |αδ − βγ| of the output
};

namespace detail {

inline TwoQubitState bloch_product(double t1, double f1, double t2, double f2) {
  return TwoQubitState::product({std::cos(t1 / 2), std::polar(1.0, f1) * std::sin(t1 / 2)},
                                {std::cos(t2 / 2), std::polar(1.0, f2) * std::sin(t2 / 2)});
}

inline double output_det(const Matrix& g, const std::array<double, 4>& a) {
  const auto out = apply_gate(g, bloch_product(a[0], a[1], a[2], a[3]));
  return std::abs(out.alpha * out.delta - out.beta * out.gamma);
}

}  // namespace detail

/// Unitary G is non-entangling iff G or G·T is a tensor product. For an
/// entangling G, a product input with a large output determinant is found on
/// a Bloch-sphere grid (starting at |00>) and then refined by compass search.
inline EntanglingVerdict is_entangling_gate(const Matrix& g, const Tolerance& tol = {}) {
  detail::require_dim4(g, "is_entangling_gate");
  if (!is_unitary(g, tol).unitary) throw NotUnitary("is_entangling_gate: input is not unitary");

  EntanglingVerdict v;
  v.local_ratio = schmidt_ratio(g);
  v.swap_ratio = schmidt_ratio(g * swap_matrix(2));
  v.entangling = v.local_ratio > kLocalGapRatio && v.swap_ratio > kLocalGapRatio;
  if (!v.entangling) return v;

  constexpr double pi = std::numbers::pi;
  constexpr int kTheta = 9, kPhi = 8;
  constexpr double kImprove = 1e-12;
  std::array<double, 4> best{0, 0, 0, 0};
  double best_det = detail::output_det(g, best);
  for (int a = 0; a < kTheta; ++a)
    for (int b = 0; b < kPhi; ++b)
      for (int c = 0; c < kTheta; ++c)
        for (int d = 0; d < kPhi; ++d) {
          const std::array<double, 4> x{pi * a / (kTheta - 1), 2 * pi * b / kPhi, pi * c / (kTheta - 1),
                                        2 * pi * d / kPhi};
          const double det = detail::output_det(g, x);
          if (det > best_det + kImprove) {
            best_det = det;
            best = x;
          }
        }
  for (double step = pi / 8; step > 1e-7; step /= 2) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t k = 0; k < 4; ++k)
        for (double sgn : {1.0, -1.0}) {
          auto x = best;
          x[k] += sgn * step;
          const double det = detail::output_det(g, x);
          if (det > best_det + kImprove) {
            best_det = det;
            best = x;
            moved = true;
          }
        }
    }
  }
  v.witness = detail::bloch_product(best[0], best[1], best[2], best[3]);
  v.output = apply_gate(g, *v.witness);
  v.witness_determinant = best_det;
  return v;
}

}  // namespace ybe4
