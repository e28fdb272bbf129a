// Copyright 2026 The ridgekit Authors.
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

// Independent reference implementations used by the tests. Nothing here calls
// into the library's numerical kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

/// Dense Toeplitz matrix (rows = in + S, cols = in) with entry (i, k) = w[i-k].
inline Matrix toeplitz(const std::vector<double>& w, int in, int S) {
  Matrix T(static_cast<std::size_t>(in + S), std::vector<double>(static_cast<std::size_t>(in), 0.0));
  for (int i = 0; i < in + S; ++i) {
    for (int k = 0; k < in; ++k) {
      const int idx = i - k;
      if (idx >= 0 && idx < static_cast<int>(w.size())) {
        T[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(idx)];
      }
    }
  }
  return T;
}

inline Matrix matmul(const Matrix& A, const Matrix& B) {
  const std::size_t n = A.size();
  const std::size_t k = B.size();
  const std::size_t m = B.empty() ? 0 : B[0].size();
  Matrix C(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][p] * B[p][j];
  return C;
}

inline std::vector<double> matvec(const Matrix& A, const std::vector<double>& x) {
  std::vector<double> y(A.size(), 0.0);
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
  return y;
}

/// Schoolbook polynomial product.
inline std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix A, std::vector<double> b) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (A[piv][col] == 0.0) throw std::runtime_error("oracle::solve: singular");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

/// Composite Gauss-Legendre over `pieces` equal subintervals of [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, int pieces,
                        int order = 8) {
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  const double h = (b - a) / pieces;
  double s = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < order; ++i) {
      s += w[static_cast<std::size_t>(i)] * f(lo + 0.5 * h * (x[static_cast<std::size_t>(i)] + 1.0));
    }
  }
  return 0.5 * h * s;
}

/// Density of u = <xi, x> for x uniform on the unit ball of R^d and |xi| = 1:
/// proportional to (1 - u^2)^{(d-1)/2} on [-1, 1].
inline double projection_density(double u, int d) {
  const double base = std::max(0.0, 1.0 - u * u);
  const double exponent = (d - 1) / 2.0;
  const double norm = std::exp(std::lgamma(d / 2.0 + 1.0) - std::lgamma((d + 1) / 2.0)) /
                      std::sqrt(std::acos(-1.0));
  return norm * std::pow(base, exponent);
}

/// Ordinary least squares slope of y on x.
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

/// Independent generator for test inputs, separate from the library's.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  std::vector<double> ball_point(int d) {
    std::vector<double> v(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (auto& x : v) {
      x = normal();
      n2 += x * x;
    }
    const double r = std::pow(uniform(0.0, 1.0), 1.0 / d) / std::sqrt(n2);
    for (auto& x : v) x *= r;
    return v;
  }
  std::vector<double> unit_vector(int d) {
    std::vector<double> v(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (auto& x : v) {
      x = normal();
      n2 += x * x;
    }
    for (auto& x : v) x /= std::sqrt(n2);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
