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
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ybe4/errors.hpp"
#include "ybe4/linalg.hpp"
#include "ybe4/random.hpp"
#include "ybe4/ybe.hpp"

namespace ybe4 {

/// The five families of 4x4 unitary braided solutions k·A·R·A⁻¹·T, A = Q⊗Q.
enum class Family { F1 = 1, F2, F3, F4, F5 };

inline constexpr Family kAllFamilies[] = {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5};

inline std::string to_string(Family f) { return "F" + std::to_string(static_cast<int>(f)); }

inline std::optional<Family> family_from_int(int id) {
  if (id < 1 || id > 5) return std::nullopt;
  return static_cast<Family>(id);
}

/// Parameters of one family member.
///
/// F1 uses p, q, r; F3 uses p, q; F2 derives p, q from Q; F4 and F5 have no
/// representative parameters. `phase` is the unit scalar k.
struct FamilySpec {
  Family family = Family::F5;
  Complex p{1.0};
  Complex q{1.0};
  Complex r{1.0};
  Complex phase{1.0};
  Matrix Q = Matrix::identity(2);
};

struct Violation {
  std::string constraint;
  double deviation = 0.0;
};

/// |c + a·b̄/d̄| for Q = [[a,b],[c,d]]; zero exactly when Q has orthogonal
/// columns. Infinite when d = 0 and the columns are not orthogonal.
inline double column_constraint_defect(const Matrix& q) {
  const Complex a = q(0, 0), b = q(0, 1), c = q(1, 0), d = q(1, 1);
  if (d == Complex{}) {
    return std::abs(a * std::conj(b)) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::abs(c + a * std::conj(b) / std::conj(d));
}

/// Family-2 p and q as closed forms in the entries of Q (their product is 1).
inline std::pair<Complex, Complex> family2_pq(const Matrix& q) {
  const Complex a = q(0, 0), b = q(0, 1), c = q(1, 0), d = q(1, 1);
  const double x = std::norm(a) + std::norm(c);
  const double y = std::norm(b) + std::norm(d);
  const Complex z = a * std::conj(b) + c * std::conj(d);
  const Complex zbar = std::conj(a) * b + std::conj(c) * d;
  return {y * zbar / (x * z), x * z / (y * zbar)};
}

inline Matrix family4_representative() {
  const double h = 1.0 / std::sqrt(2.0);
  return Matrix{{h, 0, 0, h}, {0, h, h, 0}, {0, h, -h, 0}, {-h, 0, 0, h}};
}

/// Algebraic representative of `family` with the given entries, no checks.
inline Matrix representative_shape(Family family, Complex p, Complex q, Complex r) {
  switch (family) {
    case Family::F1:
      return Matrix::diagonal({Complex{1.0}, p, q, r});
    case Family::F2:
    case Family::F3:
      return Matrix{{0, 0, 0, p}, {0, 0, 1, 0}, {0, 1, 0, 0}, {q, 0, 0, 0}};
    case Family::F4:
      return family4_representative();
    case Family::F5:
      return swap_matrix(2);
  }
  return Matrix::identity(4);
}

namespace detail {

inline double relative_gap(double value, double target) {
  return std::abs(value - target) / std::max(1.0, std::abs(target));
}

}  // namespace detail

/// Every constraint `spec` violates, with the measured deviation. Empty iff
/// the spec is valid.
inline std::vector<Violation> validate_params(const FamilySpec& spec, const Tolerance& tol = {}) {
  std::vector<Violation> out;
  const double eps = tol.eq_tol;
  auto require = [&](const char* name, double deviation) {
    if (!(deviation <= eps)) out.push_back({name, deviation});
  };

  require("|k| = 1", std::abs(std::abs(spec.phase) - 1.0));
  if (spec.Q.dim() != 2) {
    out.push_back({"Q is 2x2", static_cast<double>(spec.Q.dim())});
    return out;
  }
  const double qscale = std::max(max_abs(spec.Q), std::numeric_limits<double>::min());
  const double det = std::abs(determinant(spec.Q));
  if (!(det > tol.singular_tol * qscale * qscale)) out.push_back({"Q invertible", det});

  const Complex a = spec.Q(0, 0), c = spec.Q(1, 0), d = spec.Q(1, 1);
  const double col = column_constraint_defect(spec.Q);
  const double col_scale = std::max(1.0, std::abs(c));

  switch (spec.family) {
    case Family::F1:
      require("|p| = 1", std::abs(std::abs(spec.p) - 1.0));
      require("|q| = 1", std::abs(std::abs(spec.q) - 1.0));
      require("|r| = 1", std::abs(std::abs(spec.r) - 1.0));
      require("c = -a*conj(b)/conj(d)", col / col_scale);
      break;
    case Family::F2:
      if (col / col_scale <= eps) out.push_back({"c != -a*conj(b)/conj(d)", col});
      break;
    case Family::F3: {
      require("c = -a*conj(b)/conj(d)", col / col_scale);
      if (std::abs(a) == 0.0) {
        out.push_back({"a != 0", 0.0});
        break;
      }
      const double ratio = std::norm(d) / std::norm(a);
      require("|p| = |d|^2/|a|^2", detail::relative_gap(std::abs(spec.p), ratio));
      require("|q| = |a|^2/|d|^2", detail::relative_gap(std::abs(spec.q), 1.0 / ratio));
      break;
    }
    case Family::F4:
      require("c = -a*conj(b)/conj(d)", col / col_scale);
      require("|a| = |d|", detail::relative_gap(std::abs(a), std::abs(d)));
      break;
    case Family::F5:
      break;
  }
  return out;
}

inline std::string describe(const std::vector<Violation>& violations) {
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += "violated " + v.constraint + " (deviation " + std::to_string(v.deviation) + ")";
  }
  return s;
}

/// The algebraic representative R for a valid spec. F2 takes p, q from Q.
inline Matrix family_representative(const FamilySpec& spec, const Tolerance& tol = {}) {
  if (auto v = validate_params(spec, tol); !v.empty()) throw ConstraintViolation(describe(v));
  if (spec.family == Family::F2) {
    auto [p, q] = family2_pq(spec.Q);
    return representative_shape(Family::F2, p, q, 0.0);
  }
  return representative_shape(spec.family, spec.p, spec.q, spec.r);
}

/// k·A·R·A⁻¹·T without validating the family constraints.
inline Matrix build_member(Family family, Complex phase, const Matrix& q_mat, Complex p, Complex q, Complex r,
                           const Tolerance& tol = {}) {
  const Matrix a = kron(q_mat, q_mat);
  return phase * (a * representative_shape(family, p, q, r) * inverse(a, tol) * swap_matrix(2));
}

/// The braided, unitary member k·A·R·A⁻¹·T described by `spec`.
inline Matrix family_member(const FamilySpec& spec, const Tolerance& tol = {}) {
  const Matrix rep = family_representative(spec, tol);
  const Matrix a = kron(spec.Q, spec.Q);
  return spec.phase * (a * rep * inverse(a, tol) * swap_matrix(2));
}

/// Q with orthogonal columns: c = −a·b̄/d̄ from Gaussian a, b, d.
inline Matrix random_column_orthogonal_q(Rng& rng, std::optional<double> d_modulus = std::nullopt) {
  for (;;) {
    const Complex a = random_gaussian(rng);
    const Complex b = random_gaussian(rng);
    const Complex d = d_modulus ? std::polar(*d_modulus * std::abs(a), random_angle(rng)) : random_gaussian(rng);
    if (std::abs(d) < 1e-6) continue;
    const Complex c = -a * std::conj(b) / std::conj(d);
    Matrix q{{a, b}, {c, d}};
    if (std::abs(determinant(q)) >= 1e-6) return q;
  }
}

/// A random valid spec: unit phases uniform, free complex entries Gaussian.
inline FamilySpec random_family_spec(Family family, Rng& rng) {
  FamilySpec spec;
  spec.family = family;
  spec.phase = random_phase(rng);
  switch (family) {
    case Family::F1:
      spec.Q = random_column_orthogonal_q(rng);
      spec.p = random_phase(rng);
      spec.q = random_phase(rng);
      spec.r = random_phase(rng);
      break;
    case Family::F2:
      for (;;) {
        spec.Q = random_matrix(rng, 2);
        if (std::abs(determinant(spec.Q)) >= 1e-6 && column_constraint_defect(spec.Q) > 1e-6) break;
      }
      std::tie(spec.p, spec.q) = family2_pq(spec.Q);
      break;
    case Family::F3: {
      spec.Q = random_column_orthogonal_q(rng);
      const double ratio = std::norm(spec.Q(1, 1)) / std::norm(spec.Q(0, 0));
      spec.p = ratio * random_phase(rng);
      spec.q = random_phase(rng) / ratio;
      break;
    }
    case Family::F4:
      spec.Q = random_column_orthogonal_q(rng, 1.0);
      break;
    case Family::F5:
      for (;;) {
        spec.Q = random_matrix(rng, 2);
        if (std::abs(determinant(spec.Q)) >= 1e-6) break;
      }
      break;
  }
  return spec;
}

/// Q, A = Q⊗Q, H = A*A and the scalars x = |a|²+|c|², y = |b|²+|d|²,
/// z = a·b̄ + c·d̄ that determine H.
struct GramData {
  Matrix Q;
  Matrix A;
  Matrix H;
  double x = 0.0;
  double y = 0.0;
  Complex z{};
};

/// H written out in x, y, z; equals (Q*Q)⊗(Q*Q).
inline Matrix gram_closed_form(double x, double y, Complex z) {
  const Complex zb = std::conj(z);
  return Matrix{{x * x, x * zb, zb * x, zb * zb},
                {x * z, x * y, zb * z, zb * y},
                {z * x, z * zb, y * x, y * zb},
                {z * z, z * y, y * z, y * y}};
}

inline GramData gram(const Matrix& q, const Tolerance& tol = {}) {
  if (q.dim() != 2) throw DimensionError("gram: Q must be 2x2");
  const double scale = max_abs(q);
  if (!(std::abs(determinant(q)) > tol.singular_tol * scale * scale)) throw SingularMatrix("gram: Q is singular");
  GramData g;
  g.Q = q;
  g.A = kron(q, q);
  g.H = dagger(g.A) * g.A;
  g.x = std::norm(q(0, 0)) + std::norm(q(1, 0));
  g.y = std::norm(q(0, 1)) + std::norm(q(1, 1));
  g.z = q(0, 0) * std::conj(q(0, 1)) + q(1, 0) * std::conj(q(1, 1));
  return g;
}

/// D = H·R⁻¹ − R*·H. Zero exactly when A·R·A⁻¹ is unitary.
inline Matrix d_matrix(const Matrix& r, const Matrix& q, const Tolerance& tol = {}) {
  detail::require_dim4(r, "d_matrix");
  const GramData g = gram(q, tol);
  return g.H * inverse(r, tol) - dagger(r) * g.H;
}

struct FilterResult {
  bool pass = false;
  std::vector<Complex> eigenvalues;
  std::vector<double> moduli;
  double spread = 0.0;  // (max − min)/max modulus
};

inline constexpr double kFilterRelTol = 1e-6;

/// Necessary condition for some scalar multiple of a conjugate of R to be
/// unitary: all eigenvalues share one modulus. Scale invariant, so the
/// optimal scalar normalization is implicit.
inline FilterResult eigenvalue_filter(const Matrix& r, const Tolerance& tol = {}) {
  detail::require_dim4(r, "eigenvalue_filter");
  (void)inverse(r, tol);  // throws SingularMatrix
  FilterResult out;
  out.eigenvalues = eigenvalues(r);
  for (const auto& l : out.eigenvalues) out.moduli.push_back(std::abs(l));
  const auto [lo, hi] = std::minmax_element(out.moduli.begin(), out.moduli.end());
  out.spread = (*hi - *lo) / *hi;
  out.pass = out.spread <= kFilterRelTol;
  return out;
}

/// Parameter slots of the candidate representatives.
struct CandidateParams {
  Complex k{1.0};
  Complex p{0.0};
  Complex q{0.0};
  Complex s{0.0};
};

/// One invertible representative from the classical list of algebraic
/// solutions. `sample` draws parameters under the normalization the case
/// analysis uses (leading entry 1, unit phases where it scales them so).
struct CandidateRep {
  std::string name;
  std::vector<std::string> param_names;
  std::function<Matrix(const CandidateParams&)> build;
  std::function<CandidateParams(Rng&)> sample;
};

inline std::vector<CandidateRep> hietarinta_candidates() {
  using P = CandidateParams;
  auto none = [](Rng&) { return P{}; };
  std::vector<CandidateRep> out;
  out.push_back({"R01", {}, [](const P&) { return Matrix{{1, 0, 0, 1}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}}; },
                 none});
  out.push_back({"R02", {}, [](const P&) { return Matrix{{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, -1, 0}, {-1, 0, 0, 1}}; },
                 none});
  out.push_back({"R03", {}, [](const P&) { return swap_matrix(2); }, none});
  out.push_back({"R11",
                 {"p", "q"},
                 [](const P& x) {
                   const Complex p2 = x.p * x.p, q2 = x.q * x.q, pq = x.p * x.q;
                   return Matrix{{p2 + 2.0 * pq - q2, 0, 0, p2 - q2},
                                 {0, p2 + q2, p2 - q2, 0},
                                 {0, p2 - q2, p2 + q2, 0},
                                 {p2 - q2, 0, 0, p2 - 2.0 * pq - q2}};
                 },
                 [](Rng& rng) { return P{1.0, random_gaussian(rng), random_gaussian(rng), 0.0}; }});
  out.push_back({"R12",
                 {"k", "p", "q"},
                 [](const P& x) {
                   return Matrix{{x.p, 0, 0, x.k}, {0, x.p, x.p - x.q, 0}, {0, 0, x.q, 0}, {0, 0, 0, -x.q}};
                 },
                 [](Rng& rng) { return P{random_gaussian(rng), 1.0, random_phase(rng), 0.0}; }});
  out.push_back({"R13",
                 {"k", "p", "q"},
                 [](const P& x) {
                   const Complex k2 = x.k * x.k;
                   return Matrix{{k2, x.k * x.p, -x.k * x.p, x.p * x.q},
                                 {0, k2, 0, x.k * x.q},
                                 {0, 0, k2, -x.k * x.q},
                                 {0, 0, 0, k2}};
                 },
                 [](Rng& rng) { return P{1.0, random_gaussian(rng), random_gaussian(rng), 0.0}; }});
  out.push_back({"R14",
                 {"k", "p", "q"},
                 [](const P& x) { return Matrix{{0, 0, 0, x.p}, {0, 0, x.k, 0}, {0, x.k, 0, 0}, {x.q, 0, 0, 0}}; },
                 [](Rng& rng) {
                   const Complex p = random_gaussian(rng);
                   return P{1.0, p, random_phase(rng) / p, 0.0};
                 }});
  out.push_back({"R21",
                 {"k", "p", "q"},
                 [](const P& x) {
                   const Complex k2 = x.k * x.k;
                   return Matrix{{k2, 0, 0, 0}, {0, x.k * x.p, k2 - x.p * x.q, 0}, {0, 0, x.k * x.q, 0}, {0, 0, 0, k2}};
                 },
                 [](Rng& rng) { return P{1.0, random_phase(rng), random_phase(rng), 0.0}; }});
  out.push_back({"R22",
                 {"k", "p", "q"},
                 [](const P& x) {
                   const Complex k2 = x.k * x.k;
                   return Matrix{
                       {k2, 0, 0, 0}, {0, x.k * x.p, k2 - x.p * x.q, 0}, {0, 0, x.k * x.q, 0}, {0, 0, 0, -x.p * x.q}};
                 },
                 [](Rng& rng) { return P{1.0, random_phase(rng), random_phase(rng), 0.0}; }});
  out.push_back({"R23",
                 {"k", "p", "q", "s"},
                 [](const P& x) {
                   return Matrix{{x.k, x.p, x.q, x.s}, {0, x.k, 0, x.q}, {0, 0, x.k, x.p}, {0, 0, 0, x.k}};
                 },
                 [](Rng& rng) {
                   return P{1.0, random_gaussian(rng), random_gaussian(rng), random_gaussian(rng)};
                 }});
  out.push_back({"R31",
                 {"k", "p", "q", "s"},
                 [](const P& x) { return Matrix::diagonal({x.k, x.p, x.q, x.s}); },
                 [](Rng& rng) { return P{1.0, random_phase(rng), random_phase(rng), random_phase(rng)}; }});
  return out;
}

struct CandidateOutcome {
  std::string name;
  int samples = 0;
  int passes = 0;
  int singular_redraws = 0;
  double pass_fraction = 0.0;
  bool passes_filter = false;  // pass_fraction >= 1/2
};

struct EliminationReport {
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<CandidateOutcome> candidates;
};

/// Applies the eigenvalue filter to `samples` draws of every candidate. Each
/// candidate has its own RNG stream, so results do not depend on order.
inline EliminationReport run_elimination(int samples, std::uint64_t seed, const Tolerance& tol = {}) {
  if (samples < 1) throw PreconditionFailed("run_elimination: samples must be >= 1");
  EliminationReport report{samples, seed, {}};
  const auto candidates = hietarinta_candidates();
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const auto& cand = candidates[idx];
    Rng rng = make_rng(seed, idx);
    CandidateOutcome outcome{cand.name, samples, 0, 0, 0.0, false};
    for (int s = 0; s < samples; ++s) {
      for (int attempt = 0;; ++attempt) {
        try {
          if (eigenvalue_filter(cand.build(cand.sample(rng)), tol).pass) ++outcome.passes;
          break;
        } catch (const SingularMatrix&) {
          ++outcome.singular_redraws;
          if (attempt > 100) throw;
        }
      }
    }
    outcome.pass_fraction = static_cast<double>(outcome.passes) / samples;
    outcome.passes_filter = outcome.pass_fraction >= 0.5;
    report.candidates.push_back(outcome);
  }
  return report;
}

}  // namespace ybe4
