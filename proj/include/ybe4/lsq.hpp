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
#include <cstddef>
#include <vector>

namespace ybe4 {

struct LsqOptions {
  int max_iterations = 200;
  double gradient_tol = 1e-10;
  double cost_tol = 1e-30;  // stop once 0.5‖r‖² falls below this
  double fd_step = 1e-7;
};

struct LsqResult {
  std::vector<double> x;
  double cost = 0.0;  // 0.5‖r‖²
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline double half_norm2(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return 0.5 * s;
}

/// Solves the SPD system a·x = b in place (row-major n×n). False if a is not
/// numerically positive definite.
inline bool cholesky_solve(std::vector<double> a, std::vector<double>& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
    b[i] = s / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[k * n + i] * b[k];
    b[i] = s / a[i * n + i];
  }
  return true;
}

}  // namespace detail

/// Levenberg–Marquardt on a residual vector with a central-difference
/// Jacobian. `f` maps parameters to residuals of fixed length.
template <typename F>
LsqResult levenberg_marquardt(F&& f, std::vector<double> x, const LsqOptions& opt = {}) {
  const std::size_t n = x.size();
  std::vector<double> r = f(x);
  const std::size_t m = r.size();
  double cost = detail::half_norm2(r);
  double lambda = 1e-3;

  LsqResult out;
  std::vector<double> jac(m * n), jtj(n * n), g(n);
  for (int it = 0; it < opt.max_iterations; ++it) {
    out.iterations = it + 1;
    for (std::size_t j = 0; j < n; ++j) {
      const double h = opt.fd_step * std::max(1.0, std::abs(x[j]));
      auto xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const auto rp = f(xp), rm = f(xm);
      for (std::size_t i = 0; i < m; ++i) jac[i * n + j] = (rp[i] - rm[i]) / (2.0 * h);
    }
    double gnorm = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += jac[i * n + a] * r[i];
      g[a] = s;
      gnorm += s * s;
      for (std::size_t b = a; b < n; ++b) {
        double t = 0.0;
        for (std::size_t i = 0; i < m; ++i) t += jac[i * n + a] * jac[i * n + b];
        jtj[a * n + b] = jtj[b * n + a] = t;
      }
    }
    out.gradient_norm = std::sqrt(gnorm);
    if (out.gradient_norm <= opt.gradient_tol || cost <= opt.cost_tol) {
      out.converged = true;
      break;
    }

    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      auto damped = jtj;
      for (std::size_t a = 0; a < n; ++a) damped[a * n + a] += lambda * std::max(jtj[a * n + a], 1e-12);
      std::vector<double> step(n);
      for (std::size_t a = 0; a < n; ++a) step[a] = -g[a];
      if (detail::cholesky_solve(damped, step, n)) {
        auto trial = x;
        for (std::size_t a = 0; a < n; ++a) trial[a] += step[a];
        auto rt = f(trial);
        const double ct = detail::half_norm2(rt);
        if (ct < cost) {
          x = std::move(trial);
          r = std::move(rt);
          cost = ct;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
          continue;
        }
      }
      lambda *= 4.0;
    }
    if (!accepted) break;  // no descent direction left at working precision
  }
  out.x = std::move(x);
  out.cost = cost;
  return out;
}

}  // namespace ybe4
