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
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ybe4/errors.hpp"

namespace ybe4 {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Comparison thresholds shared by every check in the library.
///
/// `eq_tol` bounds entrywise comparisons, `residual_tol` bounds Frobenius
/// residuals (scaled by the dimension where noted) and `singular_tol` is the
/// pivot threshold, relative to the largest entry, below which a matrix is
/// treated as non-invertible.
struct Tolerance {
  double eq_tol = 1e-9;
  double residual_tol = 1e-9;
  double singular_tol = 1e-6;
};

/// Dense square matrix, row-major.
///
/// For dim 4 the basis is v0⊗v0, v0⊗v1, v1⊗v0, v1⊗v1 and the entry R^{ab}_{ij}
/// lives at row (a,b), column (i,j): columns are inputs, rows are outputs.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;

  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows)
      : dim_(rows.size()), data_() {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      assert(row.size() == dim_);
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = T{1};
    return m;
  }

  static DenseMatrix diagonal(std::span<const T> values) {
    DenseMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static DenseMatrix diagonal(std::initializer_list<T> values) {
    return diagonal(std::span<const T>(values.begin(), values.size()));
  }

  std::size_t dim() const noexcept { return dim_; }

  T& operator()(std::size_t row, std::size_t col) {
    assert(row < dim_ && col < dim_);
    return data_[row * dim_ + col];
  }
  const T& operator()(std::size_t row, std::size_t col) const {
    assert(row < dim_ && col < dim_);
    return data_[row * dim_ + col];
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  DenseMatrix& operator+=(const DenseMatrix& other) {
    assert(dim_ == other.dim_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& other) {
    assert(dim_ == other.dim_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(const T& scalar) {
    for (auto& v : data_) v *= scalar;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
  friend DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
  friend DenseMatrix operator*(DenseMatrix lhs, const T& scalar) { return lhs *= scalar; }
  friend DenseMatrix operator*(const T& scalar, DenseMatrix rhs) { return rhs *= scalar; }
  friend DenseMatrix operator-(DenseMatrix m) { return m *= T{-1}; }

  friend DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    assert(lhs.dim_ == rhs.dim_);
    const std::size_t n = lhs.dim_;
    DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const T a = lhs(i, k);
        if (a == T{}) continue;
        for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<T> data_;
};

using Matrix = DenseMatrix<Complex>;

/// Matrix-vector product.
inline std::vector<Complex> apply(const Matrix& m, std::span<const Complex> v) {
  assert(v.size() == m.dim());
  std::vector<Complex> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < m.dim(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

/// kron(A,B)[(i·n+k),(j·n+l)] = A[i,j]·B[k,l].
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t m = a.dim();
  const std::size_t n = b.dim();
  Matrix out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(i * n + k, j * n + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix dagger(const Matrix& a) {
  Matrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

inline Matrix transpose(const Matrix& a) {
  Matrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a(j, i);
  return out;
}

inline Matrix conjugate(const Matrix& a) {
  Matrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = std::conj(a(i, j));
  return out;
}

inline Complex trace(const Matrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

inline bool all_finite(const Matrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

/// Entrywise comparison within `tol`.
inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (std::abs(a.data()[i] - b.data()[i]) > tol) return false;
  return true;
}

namespace detail {

// LU with partial pivoting, in place. Returns the permutation sign, or 0 when
// a pivot falls below `threshold`.
inline int lu_decompose(Matrix& a, std::vector<std::size_t>& perm, double threshold) {
  const std::size_t n = a.dim();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (!(best > threshold)) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return sign;
}

}  // namespace detail

inline Complex determinant(const Matrix& a) {
  Matrix lu = a;
  std::vector<std::size_t> perm;
  const int sign = detail::lu_decompose(lu, perm, 0.0);
  if (sign == 0) return Complex{};
  Complex det{static_cast<double>(sign)};
  for (std::size_t i = 0; i < a.dim(); ++i) det *= lu(i, i);
  return det;
}

/// Inverse by LU with partial pivoting.
///
/// Throws SingularMatrix when a pivot is below `tol.singular_tol` times the
/// largest entry of `a`.
inline Matrix inverse(const Matrix& a, const Tolerance& tol = {}) {
  const std::size_t n = a.dim();
  const double scale = max_abs(a);
  if (n == 0 || scale == 0.0) throw SingularMatrix("inverse: zero matrix");
  Matrix lu = a;
  std::vector<std::size_t> perm;
  if (detail::lu_decompose(lu, perm, tol.singular_tol * scale) == 0)
    throw SingularMatrix("inverse: pivot below singular threshold");

  Matrix inv(n);
  std::vector<Complex> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = perm[i] == c ? Complex{1.0} : Complex{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) col[i] -= lu(i, k) * col[k];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t k = ii + 1; k < n; ++k) col[ii] -= lu(ii, k) * col[k];
      col[ii] /= lu(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

/// Coefficients of det(λI − A), monic, highest degree first (Faddeev–LeVerrier).
inline std::vector<Complex> char_poly(const Matrix& a) {
  const std::size_t n = a.dim();
  std::vector<Complex> coeffs(n + 1);
  coeffs[0] = 1.0;
  Matrix m(n);
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + coeffs[k - 1] * id;
    coeffs[k] = -trace(a * m) / static_cast<double>(k);
  }
  return coeffs;
}

/// Horner evaluation of a polynomial given highest degree first.
inline Complex poly_eval(std::span<const Complex> coeffs, Complex x) {
  Complex acc{};
  for (const auto& c : coeffs) acc = acc * x + c;
  return acc;
}

namespace detail {

// Both roots of the 2x2 block [[a,b],[c,d]].
inline std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
  const Complex half_tr = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  Complex l1 = half_tr + disc;
  Complex l2 = half_tr - disc;
  // The larger root is accurate; recover the smaller from the determinant.
  const Complex det = a * d - b * c;
  if (std::abs(l1) >= std::abs(l2)) {
    if (std::abs(l1) > 0.0) l2 = det / l1;
  } else {
    l1 = det / l2;
  }
  return {l1, l2};
}

// Householder reduction to upper Hessenberg form (eigenvalues only).
inline void to_hessenberg(Matrix& h) {
  const std::size_t n = h.dim();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += std::norm(h(i, k));
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex{1.0};
    std::fill(v.begin(), v.end(), Complex{});
    v[k + 1] = x0 + phase * alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    // H <- (I - 2vv*/v*v) H (I - 2vv*/v*v)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
  }
}

// Shifted QR on an upper Hessenberg matrix, Wilkinson shifts, Givens sweeps.
inline std::vector<Complex> hessenberg_qr(Matrix h, int max_sweeps) {
  const std::size_t n = h.dim();
  std::vector<Complex> eig;
  eig.reserve(n);
  if (n == 0) return eig;
  const double eps = std::numeric_limits<double>::epsilon();
  const double hnorm = std::max(frobenius_norm(h), std::numeric_limits<double>::min());

  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int sweeps = 0;
  int since_deflation = 0;
  std::vector<double> cs(n);
  std::vector<Complex> sn(n);

  while (hi >= 0) {
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double off = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (off <= eps * (diag > 0.0 ? diag : hnorm)) {
        h(lo, lo - 1) = Complex{};
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      since_deflation = 0;
      continue;
    }
    if (lo == hi - 1) {
      auto [l1, l2] = eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      eig.push_back(l1);
      eig.push_back(l2);
      hi -= 2;
      since_deflation = 0;
      continue;
    }
    if (++sweeps > max_sweeps) throw NonConvergence("eigenvalues: QR iteration cap reached");

    Complex shift;
    ++since_deflation;
    if (since_deflation % 11 == 0) {
      // Exceptional shift breaks cycles on symmetric spectra.
      shift = h(hi, hi) + Complex{0.75, 0.4375} * std::abs(h(hi, hi - 1));
    } else {
      auto [l1, l2] = eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      shift = std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi)) ? l1 : l2;
    }

    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) -= shift;
    // QR: rotations zero the subdiagonal of the active block.
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const Complex a = h(k, k);
      const Complex b = h(k + 1, k);
      const double r = std::hypot(std::abs(a), std::abs(b));
      double c = 1.0;
      Complex s{};
      if (r > 0.0) {
        c = std::abs(a) / r;
        const Complex ph = std::abs(a) > 0.0 ? a / std::abs(a) : Complex{1.0};
        s = ph * std::conj(b) / r;
      }
      cs[static_cast<std::size_t>(k)] = c;
      sn[static_cast<std::size_t>(k)] = s;
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const Complex x = h(k, j);
        const Complex y = h(k + 1, j);
        h(k, j) = c * x + s * y;
        h(k + 1, j) = -std::conj(s) * x + c * y;
      }
    }
    // RQ: apply the adjoint rotations from the right.
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const double c = cs[static_cast<std::size_t>(k)];
      const Complex s = sn[static_cast<std::size_t>(k)];
      const std::ptrdiff_t last = std::min(k + 2, hi);
      for (std::ptrdiff_t i = lo; i <= last; ++i) {
        const Complex x = h(i, k);
        const Complex y = h(i, k + 1);
        h(i, k) = c * x + std::conj(s) * y;
        h(i, k + 1) = -s * x + c * y;
      }
    }
    for (std::ptrdiff_t i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  return eig;
}

}  // namespace detail

inline constexpr int kMaxQrSweeps = 500;

/// Roots of a monic polynomial (highest degree first) via shifted QR on the
/// companion matrix.
inline std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  assert(!coeffs.empty());
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  Matrix companion(n);
  for (std::size_t j = 0; j < n; ++j) companion(0, j) = -coeffs[j + 1] / coeffs[0];
  for (std::size_t i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  return detail::hessenberg_qr(std::move(companion), kMaxQrSweeps);
}

/// Eigenvalues by Hessenberg reduction and Wilkinson-shifted QR applied to the
/// matrix itself. Closed form for dim 2.
inline std::vector<Complex> eigenvalues(const Matrix& a) {
  if (a.dim() == 1) return {a(0, 0)};
  if (a.dim() == 2) {
    auto [l1, l2] = detail::eig2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
    return {l1, l2};
  }
  Matrix h = a;
  detail::to_hessenberg(h);
  return detail::hessenberg_qr(std::move(h), kMaxQrSweeps);
}

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j pairs with values[j]
};

/// Cyclic complex Jacobi for Hermitian input.
inline HermitianEigen hermitian_eigen(const Matrix& h_in) {
  const std::size_t n = h_in.dim();
  Matrix a = h_in;
  Matrix v = Matrix::identity(n);
  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq <= 1e-300) continue;
        const Complex phase = a(p, q) / apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s], [-s conj(phase), c conj(phase)]] on (p,q); A <- G* A G.
        const Complex gpp = c, gpq = s, gqp = -s * std::conj(phase), gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = Complex{};
        a(q, p) = Complex{};
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), Matrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

/// Singular values, descending, by one-sided Jacobi so small values keep relative accuracy.
inline std::vector<double> singular_values(const Matrix& a) {
  const std::size_t n = a.dim();
  Matrix w = a;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma{0.0};
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex wp = w(i, p), wq = w(i, q) * phase;
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::norm(w(i, j));
    sv[j] = std::sqrt(sum);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// 2-norm condition number; infinity for singular input.
inline double condition_number(const Matrix& a) {
  const auto sv = singular_values(a);
  if (sv.empty() || sv.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

struct UnitaryCheck {
  bool unitary = false;
  double defect = 0.0;  // ‖A*A − I‖_F
};

inline double unitarity_defect(const Matrix& a) {
  return frobenius_norm(dagger(a) * a - Matrix::identity(a.dim()));
}

inline UnitaryCheck is_unitary(const Matrix& a, const Tolerance& tol = {}) {
  const double defect = unitarity_defect(a);
  return {defect <= tol.residual_tol * static_cast<double>(a.dim()), defect};
}

}  // namespace ybe4
