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

#include <algorithm>
#include <cmath>
#include <optional>

#include "ybe4/errors.hpp"
#include "ybe4/families.hpp"
#include "ybe4/linalg.hpp"
#include "ybe4/ybe.hpp"

namespace ybe4 {

/// N ⊙ K for 2×2 operands: rows run over the entries of N and columns over
/// the entries of K, both in row-major order, so (N⊙K)[i][j] = vec(N)_i·vec(K)_j.
inline Matrix odot(const Matrix& n, const Matrix& k) {
  if (n.dim() != 2 || k.dim() != 2) throw DimensionError("odot: operands must be 2x2");
  Matrix out(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = n.data()[i] * k.data()[j];
  return out;
}

/// δ = Σ N_ab·(N⁻¹)_ab, the loop value with (N⊙N⁻¹)² = δ·(N⊙N⁻¹).
inline Complex loop_value(const Matrix& n, const Tolerance& tol = {}) {
  const Matrix inv = inverse(n, tol);
  Complex s{};
  for (std::size_t i = 0; i < n.data().size(); ++i) s += n.data()[i] * inv.data()[i];
  return s;
}

/// The loop value the skein relation requires for a given α: −(α² + α⁻²).
inline Complex skein_delta(Complex alpha) { return -(alpha * alpha + 1.0 / (alpha * alpha)); }

struct SkeinTriple {
  Matrix N;
  Matrix U;  // N ⊙ N⁻¹
  Complex delta{};
};

struct BracketSolution {
  Matrix R;  // αI + α⁻¹U
  SkeinTriple skein;
  Complex required_delta{};  // −(α² + α⁻²)
  double tl_residual = 0.0;  // ‖U² − δU‖_F
  bool delta_consistent = false;
};

inline SkeinTriple skein_triple(const Matrix& n, const Tolerance& tol = {}) {
  return {n, odot(n, inverse(n, tol)), loop_value(n, tol)};
}

/// R̂ = α·I + α⁻¹·(N ⊙ N⁻¹). Braided when δ matches −(α² + α⁻²); the
/// mismatch is reported, not rejected.
inline BracketSolution bracket_solution(Complex alpha, const Matrix& n, const Tolerance& tol = {}) {
  BracketSolution out;
  out.skein = skein_triple(n, tol);
  out.R = alpha * Matrix::identity(4) + (1.0 / alpha) * out.skein.U;
  out.required_delta = skein_delta(alpha);
  out.tl_residual = frobenius_norm(out.skein.U * out.skein.U - out.skein.delta * out.skein.U);
  out.delta_consistent = std::abs(out.skein.delta - out.required_delta) <= 1e-9 * std::max(1.0, std::abs(out.skein.delta));
  return out;
}

inline Matrix bracket_R(Complex alpha, const Matrix& n, const Tolerance& tol = {}) {
  return bracket_solution(alpha, n, tol).R;
}

/// Unitary subfamily with α = i and symmetric N.
struct BracketParams {
  double r = 1.0;
  double g = 0.0;
  double p = 0.0;
  Complex alpha = kI;
};

/// N with conj(N) = N⁻¹ and equal off-diagonals:
/// [[r e^{ig}, i s e^{ip/2}], [i s e^{ip/2}, r e^{i(p−g)}]], s = √(1−r²).
inline Matrix bracket_N(double r, double g, double p) {
  const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
  const Complex off = kI * std::polar(s, p / 2);
  return Matrix{{std::polar(r, g), off}, {off, std::polar(r, p - g)}};
}

struct UnitaryBracket {
  Matrix N;
  Matrix R;
};

inline void require_bracket_params(const BracketParams& bp) {
  if (!(bp.r >= 0.0 && bp.r <= 1.0)) throw PreconditionFailed("bracket: r must lie in [0, 1]");
  if (std::abs(bp.alpha - kI) > 1e-12) throw PreconditionFailed("bracket: the unitary subfamily fixes alpha = i");
}

inline UnitaryBracket unitary_bracket_family(const BracketParams& bp, const Tolerance& tol = {}) {
  require_bracket_params(bp);
  Matrix n = bracket_N(bp.r, bp.g, bp.p);
  Matrix r = bracket_R(bp.alpha, n, tol);
  return {std::move(n), std::move(r)};
}

struct DeltaBound {
  Complex delta{};
  double identity_residual = 0.0;  // |δ − n − Σ_{i<j}|N_ij − N_ji|²|
  bool bound_holds = false;        // Re δ ≥ n − 1e−8
};

/// For conj(N) = N⁻¹, δ − n = Σ_{i<j} |N_ij − N_ji|², hence δ ≥ n.
inline DeltaBound delta_lower_bound(const Matrix& n, const Tolerance& tol = {}) {
  const std::size_t dim = n.dim();
  const double defect = frobenius_norm(conjugate(n) * n - Matrix::identity(dim));
  const double scale = std::max(1.0, std::pow(frobenius_norm(n), 2));
  if (!(defect <= 1e-8 * scale)) throw PreconditionFailed("delta_lower_bound: conj(N) is not N^-1");
  DeltaBound out;
  out.delta = loop_value(n, tol);
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) sum += std::norm(n(i, j) - n(j, i));
  out.identity_residual = std::abs(out.delta - static_cast<double>(dim) - sum);
  out.bound_holds = out.delta.real() >= static_cast<double>(dim) - 1e-8;
  return out;
}

/// Diagonalization of the unitary bracket solution and its reading as a
/// family member.
///
/// M = Q·N·Qᵗ is diagonal for Q = [[1, 0], [z, √r]]; conjugating by Q⊗Q turns
/// R̂ into R̂_M = α·I + α⁻¹·(M ⊙ M⁻¹), and R̂_M·T = k·R(p, q) with the shared
/// family-2/3 shape, k = α, p = −M₀₀/M₁₁ and q = 1/p. Hence
/// R̂ = k·A'·R(p,q)·A'⁻¹·T with A' = Q⁻¹⊗Q⁻¹.
struct BracketReduction {
  Matrix N;
  Matrix R;  // R̂
  Matrix Q;
  Matrix M;
  double offdiag_residual = 0.0;  // |M₀₁| + |M₁₀|
  Matrix R_M;
  Complex k{};
  Complex p{};
  Complex q{};
  // |p| = |d|²/|a|² and |q| = |a|²/|d|² with a, d read off Q
  double f3_p_deviation = 0.0;
  double f3_q_deviation = 0.0;
  double column_defect = 0.0;  // c = −a·b̄/d̄ on Q
  Matrix conjugator;           // Q⁻¹
  double f2_closed_form_deviation = 0.0;  // |(p,q) − family2_pq(Q⁻¹)|
  double reconstruction_residual = 0.0;   // ‖k·A'·R(p,q)·A'⁻¹·T − R̂‖_F
  std::optional<Family> family;           // F3 when both modulus conditions hold
};

inline constexpr double kBracketFamilyTol = 1e-9;

inline BracketReduction bracket_to_family(const BracketParams& bp, const Tolerance& tol = {}) {
  require_bracket_params(bp);
  if (bp.r <= 1e-9) throw DegenerateParameter("bracket_to_family: r = 0 leaves z undefined");
  BracketReduction out;
  auto ub = unitary_bracket_family(bp, tol);
  out.N = ub.N;
  out.R = ub.R;

  const double sr = std::sqrt(bp.r);
  const double s = std::sqrt(std::max(0.0, 1.0 - bp.r * bp.r));
  const Complex z = -kI * std::polar(s, bp.p / 2 - bp.g) / sr;
  out.Q = Matrix{{1.0, 0.0}, {z, sr}};
  out.M = out.Q * out.N * transpose(out.Q);
  out.offdiag_residual = std::abs(out.M(0, 1)) + std::abs(out.M(1, 0));

  const Matrix mdiag = Matrix::diagonal({out.M(0, 0), out.M(1, 1)});
  out.R_M = bp.alpha * Matrix::identity(4) + (1.0 / bp.alpha) * odot(mdiag, inverse(mdiag, tol));
  out.k = bp.alpha;
  out.p = out.R_M(0, 3) / out.k;
  out.q = out.R_M(3, 0) / out.k;

  const double ratio = std::norm(out.Q(1, 1)) / std::norm(out.Q(0, 0));
  out.f3_p_deviation = std::abs(std::abs(out.p) - ratio);
  out.f3_q_deviation = std::abs(std::abs(out.q) - 1.0 / ratio);
  out.column_defect = column_constraint_defect(out.Q);

  out.conjugator = inverse(out.Q, tol);
  if (s > 0.0) {
    const auto [p2, q2] = family2_pq(out.conjugator);
    out.f2_closed_form_deviation = std::abs(p2 - out.p) + std::abs(q2 - out.q);
  } else {
    out.f2_closed_form_deviation = std::numeric_limits<double>::infinity();  // z = 0: the F2 forms are 0/0
  }
  out.reconstruction_residual =
      frobenius_norm(build_member(Family::F3, out.k, out.conjugator, out.p, out.q, 0.0, tol) - out.R);
  if (out.f3_p_deviation <= kBracketFamilyTol && out.f3_q_deviation <= kBracketFamilyTol) out.family = Family::F3;
  return out;
}

}  // namespace ybe4
