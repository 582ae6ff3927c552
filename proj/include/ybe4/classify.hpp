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
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ybe4/entangle.hpp"
#include "ybe4/errors.hpp"
#include "ybe4/families.hpp"
#include "ybe4/linalg.hpp"
#include "ybe4/lsq.hpp"
#include "ybe4/random.hpp"
#include "ybe4/ybe.hpp"

namespace ybe4 {

/// A witness that the input equals k·A·R·A⁻¹·T for family `family`.
struct Certificate {
  Family family = Family::F5;
  Complex phase{1.0};
  Matrix Q = Matrix::identity(2);
  Complex p{1.0};
  Complex q{1.0};
  Complex r{1.0};
  double residual = std::numeric_limits<double>::infinity();  // ‖rebuilt − input‖_F
};

struct FamilyAttempt {
  Family family = Family::F5;
  bool prefilter_pass = false;
  double best_residual = std::numeric_limits<double>::infinity();
};

struct ClassificationEvidence {
  std::vector<Complex> eigenvalues;  // of the input
  EntanglingVerdict entangling;
  std::vector<FamilyAttempt> attempts;
};

struct ClassificationResult {
  std::optional<Family> family;  // nullopt means Unknown
  std::optional<Certificate> certificate;
  ClassificationEvidence evidence;
};

struct ClassifyOptions {
  int restarts = 32;
  std::uint64_t seed = 1;
  double certificate_tol = 1e-6;
  LsqOptions lsq{};
};

inline constexpr Family kClassifyOrder[] = {Family::F5, Family::F1, Family::F4, Family::F3, Family::F2};

/// Rebuilds the member a certificate describes; no constraint checks.
inline Matrix rebuild(const Certificate& c, const Tolerance& tol = {}) {
  if (c.family == Family::F2) {
    auto [p, q] = family2_pq(c.Q);
    return build_member(Family::F2, c.phase, c.Q, p, q, 0.0, tol);
  }
  return build_member(c.family, c.phase, c.Q, c.p, c.q, c.r, tol);
}

namespace detail {

inline Complex unit(Complex z) {
  const double m = std::abs(z);
  return m > 0.0 ? z / m : Complex{1.0};
}

inline Matrix su2(double theta, double phi1, double phi2) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Matrix{{std::polar(c, phi1), std::polar(s, phi2)}, {-std::polar(s, -phi2), std::polar(c, -phi1)}};
}

inline void push_complex(std::vector<double>& out, Complex z) {
  out.push_back(z.real());
  out.push_back(z.imag());
}

inline bool in_antidiag_pattern(std::size_t i, std::size_t j) { return i + j == 3; }

/// Fills the representative parameters and phase from X = W*·M·W.
inline Certificate certificate_from_reduced(Family family, const Matrix& x, const Matrix& u) {
  Certificate c;
  c.family = family;
  c.Q = u;
  switch (family) {
    case Family::F1:
      c.phase = unit(x(0, 0));
      c.p = unit(x(1, 1) / c.phase);
      c.q = unit(x(2, 2) / c.phase);
      c.r = unit(x(3, 3) / c.phase);
      break;
    case Family::F3:
      c.phase = unit(x(1, 2) + x(2, 1));
      c.p = unit(x(0, 3) / c.phase);
      c.q = unit(x(3, 0) / c.phase);
      break;
    case Family::F4: {
      const Matrix rep = family4_representative();
      Complex s{};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s += rep(i, j) * x(i, j);
      c.phase = unit(s);
      break;
    }
    default:
      break;
  }
  return c;
}

/// Off-pattern mass of W*·M·W for a unitary-Q family.
inline std::vector<double> reduced_residual(Family family, const Matrix& m, const Matrix& u) {
  const Matrix w = kron(u, u);
  const Matrix x = dagger(w) * m * w;
  std::vector<double> out;
  out.reserve(34);
  switch (family) {
    case Family::F1:
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (i != j) push_complex(out, x(i, j));
      break;
    case Family::F3:
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (!in_antidiag_pattern(i, j)) push_complex(out, x(i, j));
      push_complex(out, x(1, 2) - x(2, 1));
      break;
    case Family::F4: {
      const Matrix rep = family4_representative();
      Complex s{};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s += rep(i, j) * x(i, j);
      s /= 4.0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) push_complex(out, x(i, j) - s * rep(i, j));
      break;
    }
    default:
      break;
  }
  return out;
}

/// Unit null vector of (M − λI).
inline std::vector<Complex> null_vector(const Matrix& m, Complex lambda) {
  Matrix s = m - lambda * Matrix::identity(m.dim());
  const auto eig = hermitian_eigen(dagger(s) * s);
  std::vector<Complex> v(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) v[i] = eig.vectors(i, 0);
  return v;
}

/// Factors v ≈ x⊗y when v has product form; x, y normalized.
inline std::optional<std::pair<std::array<Complex, 2>, std::array<Complex, 2>>> product_factors(
    const std::vector<Complex>& v, double tol) {
  if (std::abs(v[0] * v[3] - v[1] * v[2]) > tol) return std::nullopt;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (std::abs(v[2 * i + j]) > std::abs(v[2 * bi + bj])) bi = i, bj = j;
  std::array<Complex, 2> x{v[bj], v[2 + bj]};
  std::array<Complex, 2> y{v[2 * bi], v[2 * bi + 1]};
  for (auto* f : {&x, &y}) {
    const double n = std::sqrt(std::norm((*f)[0]) + std::norm((*f)[1]));
    (*f)[0] /= n;
    (*f)[1] /= n;
  }
  return std::make_pair(x, y);
}

/// Product-eigenvector reconstruction for a non-degenerate spectrum of M:
/// the eigenvectors are u_a⊗u_b, and the two with parallel factors give U.
inline std::optional<Matrix> family1_from_eigenvectors(const Matrix& m) {
  const auto ev = eigenvalues(m);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (std::abs(ev[i] - ev[j]) < 1e-4) return std::nullopt;
  std::vector<std::array<Complex, 2>> diag_factors;
  for (const auto& l : ev) {
    auto f = product_factors(null_vector(m, l), 1e-8);
    if (!f) return std::nullopt;
    const auto& [x, y] = *f;
    if (std::abs(std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]) > 1.0 - 1e-6) diag_factors.push_back(x);
  }
  if (diag_factors.size() != 2) return std::nullopt;
  const auto& u0 = diag_factors[0];
  const auto& u1 = diag_factors[1];
  return Matrix{{u0[0], u1[0]}, {u0[1], u1[1]}};
}

inline bool spectrum_matches(const std::vector<Complex>& ev, const std::vector<Complex>& target, double tol) {
  for (const auto& k : ev) {
    std::vector<bool> used(target.size(), false);
    bool all = true;
    for (const auto& l : ev) {
      bool found = false;
      for (std::size_t t = 0; t < target.size() && !found; ++t)
        if (!used[t] && std::abs(l / k - target[t]) <= tol) used[t] = found = true;
      if (!found) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// Necessary spectral condition for membership of M = k·A·R·A⁻¹.
inline bool prefilter(Family family, const std::vector<Complex>& ev) {
  constexpr double tol = 1e-6;
  switch (family) {
    case Family::F4: {
      const double h = std::numbers::sqrt2 / 2;
      return spectrum_matches(ev, {1.0, -1.0, Complex{h, h}, Complex{h, -h}}, tol);
    }
    case Family::F2:
    case Family::F3: {
      // spectrum k·{1, −1, μ, −μ}
      std::vector<bool> used(4, false);
      for (std::size_t i = 0; i < 4; ++i) {
        if (used[i]) continue;
        bool found = false;
        for (std::size_t j = i + 1; j < 4 && !found; ++j)
          if (!used[j] && std::abs(ev[i] + ev[j]) <= tol) used[i] = used[j] = found = true;
        if (!found) return false;
      }
      return true;
    }
    default:
      return true;
  }
}

inline std::vector<double> family2_residual(const Matrix& m, const std::vector<double>& v) {
  Matrix qm{{Complex{v[0], v[1]}, Complex{v[2], v[3]}}, {Complex{v[4], v[5]}, Complex{v[6], v[7]}}};
  std::vector<double> out;
  const double scale = max_abs(qm);
  const double det = std::abs(determinant(qm));
  if (!(det > 1e-8 * scale * scale)) return std::vector<double>(32, 1e3);
  const Matrix a = kron(qm, qm);
  const Matrix x = inverse(a) * m * a;
  auto [p, q] = family2_pq(qm);
  if (!std::isfinite(std::abs(p)) || !std::isfinite(std::abs(q))) return std::vector<double>(32, 1e3);
  const Complex k = 0.5 * (x(1, 2) + x(2, 1));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!in_antidiag_pattern(i, j)) push_complex(out, x(i, j));
  push_complex(out, x(1, 2) - x(2, 1));
  push_complex(out, x(0, 3) - k * p);
  push_complex(out, x(3, 0) - k * q);
  return out;
}

}  // namespace detail

/// Searches for a certificate placing `rb` in `family`. Returns the best
/// candidate found, whose residual may exceed the acceptance tolerance.
inline std::optional<Certificate> find_certificate(Family family, const Matrix& rb, const ClassifyOptions& opt = {},
                                                   const Tolerance& tol = {}) {
  detail::require_dim4(rb, "find_certificate");
  const Matrix m = rb * swap_matrix(2);
  auto finish = [&](Certificate c) {
    c.residual = frobenius_norm(rebuild(c, tol) - rb);
    return c;
  };
  constexpr double kGood = 1e-10;

  if (family == Family::F5) {
    Certificate c;
    c.family = Family::F5;
    c.phase = detail::unit(trace(rb));
    return finish(c);
  }

  std::optional<Certificate> best;
  auto consider = [&](Certificate c) {
    c = finish(c);
    if (!best || c.residual < best->residual) best = c;
  };

  if (family == Family::F1) {
    if (auto u = detail::family1_from_eigenvectors(m)) {
      const Matrix w = kron(*u, *u);
      consider(detail::certificate_from_reduced(Family::F1, dagger(w) * m * w, *u));
      if (best->residual <= kGood) return best;
    }
  }

  Rng rng = make_rng(opt.seed, static_cast<std::uint64_t>(family));
  for (int restart = 0; restart < opt.restarts; ++restart) {
    if (family == Family::F2) {
      std::vector<double> x0(8);
      for (auto& v : x0) v = std::normal_distribution<double>()(rng);
      auto res = levenberg_marquardt([&](const std::vector<double>& v) { return detail::family2_residual(m, v); },
                                     x0, opt.lsq);
      const auto& v = res.x;
      Matrix qm{{Complex{v[0], v[1]}, Complex{v[2], v[3]}}, {Complex{v[4], v[5]}, Complex{v[6], v[7]}}};
      qm *= Complex{1.0 / max_abs(qm)};
      if (!(std::abs(determinant(qm)) > tol.singular_tol)) continue;
      const Matrix a = kron(qm, qm);
      const Matrix x = inverse(a, tol) * m * a;
      Certificate c;
      c.family = Family::F2;
      c.Q = qm;
      c.phase = detail::unit(x(1, 2) + x(2, 1));
      std::tie(c.p, c.q) = family2_pq(qm);
      consider(c);
    } else {
      const std::vector<double> x0{uniform(rng, 0.0, std::numbers::pi / 2), random_angle(rng), random_angle(rng)};
      auto res = levenberg_marquardt(
          [&](const std::vector<double>& v) { return detail::reduced_residual(family, m, detail::su2(v[0], v[1], v[2])); },
          x0, opt.lsq);
      const Matrix u = detail::su2(res.x[0], res.x[1], res.x[2]);
      const Matrix w = kron(u, u);
      consider(detail::certificate_from_reduced(family, dagger(w) * m * w, u));
    }
    if (best && best->residual <= kGood) break;
  }
  return best;
}

/// Tags a unitary braided solution with the first family, in the order
/// F5, F1, F4, F3, F2, for which a certificate reproduces it within
/// `certificate_tol`; Unknown otherwise.
inline ClassificationResult classify(const Matrix& rb, const ClassifyOptions& opt = {}, const Tolerance& tol = {}) {
  detail::require_dim4(rb, "classify");
  if (!is_unitary(rb, tol).unitary) throw NotUnitary("classify: input is not unitary");
  if (!(braided_residual(rb) <= tol.residual_tol)) throw NotASolution("classify: braided residual exceeds tolerance");

  ClassificationResult out;
  out.evidence.eigenvalues = eigenvalues(rb);
  out.evidence.entangling = is_entangling_gate(rb, tol);
  const auto m_ev = eigenvalues(rb * swap_matrix(2));

  for (Family f : kClassifyOrder) {
    FamilyAttempt attempt{f, detail::prefilter(f, m_ev), std::numeric_limits<double>::infinity()};
    if (attempt.prefilter_pass) {
      auto cert = find_certificate(f, rb, opt, tol);
      if (cert) attempt.best_residual = cert->residual;
      if (cert && cert->residual <= opt.certificate_tol) {
        if (f == Family::F2 && column_constraint_defect(cert->Q) <= tol.eq_tol * std::max(1.0, std::abs(cert->Q(1, 0)))) {
          cert->family = Family::F3;
        }
        out.evidence.attempts.push_back(attempt);
        out.family = cert->family;
        out.certificate = cert;
        return out;
      }
    }
    out.evidence.attempts.push_back(attempt);
  }
  return out;
}

}  // namespace ybe4
